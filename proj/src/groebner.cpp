#include "fgl/groebner.hpp"

#include <algorithm>
#include <deque>

namespace fgl {
namespace groebner {

namespace {

MPoly make_monic(const BaseDomain& dom, const MPoly& f, const MonoLess& less) {
    if (f.empty()) return f;
    const PolyTerm& lt = poly::leading_term(f, less);
    if (dom.is_one(lt.c)) return f;
    return poly::scalar_mul(dom, f, dom.inv(lt.c));
}

MPoly spoly(const BaseDomain& dom, const Packing& P, const MPoly& f, const MPoly& g,
            const MonoLess& less) {
    const PolyTerm& lf = poly::leading_term(f, less);
    const PolyTerm& lg = poly::leading_term(g, less);
    std::uint64_t l = P.lcm(lf.key, lg.key);
    std::uint64_t kf = 0, kg = 0;
    P.divide(l, lf.key, kf);
    P.divide(l, lg.key, kg);
    // both inputs are monic
    return poly::sub(dom, poly::mono_mul(dom, P, f, kf, dom.one()),
                     poly::mono_mul(dom, P, g, kg, dom.one()));
}

}  // namespace

MPoly normal_form(const BaseDomain& dom, const Packing& P, const MPoly& f,
                  const std::vector<MPoly>& basis, const MonoLess& less) {
    MPoly rem;
    MPoly work = f;
    while (!work.empty()) {
        const PolyTerm lt = poly::leading_term(work, less);
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.empty()) continue;
            const PolyTerm& lg = poly::leading_term(g, less);
            std::uint64_t q;
            if (P.divide(lt.key, lg.key, q)) {
                BaseScalar c = dom.mul(lt.c, dom.inv(lg.c));
                work = poly::sub(dom, work, poly::mono_mul(dom, P, g, q, c));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.push_back(lt);
            work = poly::sub(dom, work, MPoly{lt});
        }
    }
    poly::normalize(dom, rem);
    return rem;
}

std::vector<MPoly> reduced_basis(const BaseDomain& dom, const Packing& P, std::vector<MPoly> gens,
                                 const MonoLess& less) {
    std::vector<MPoly> basis;
    for (auto& g : gens) {
        poly::normalize(dom, g);
        if (!g.empty()) basis.push_back(make_monic(dom, g, less));
    }

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    };
    for (std::size_t j = 0; j < basis.size(); ++j) push_pairs_for(j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        if (basis[i].empty() || basis[j].empty()) continue;
        const PolyTerm& li = poly::leading_term(basis[i], less);
        const PolyTerm& lj = poly::leading_term(basis[j], less);
        // coprime leading monomials reduce to zero
        if (P.lcm(li.key, lj.key) == P.mul_checked(li.key, lj.key)) continue;
        MPoly s = spoly(dom, P, basis[i], basis[j], less);
        MPoly r = normal_form(dom, P, s, basis, less);
        if (!r.empty()) {
            basis.push_back(make_monic(dom, r, less));
            push_pairs_for(basis.size() - 1);
            if (poly::is_constant(basis.back())) break;  // ideal is (1)
        }
    }

    if (std::any_of(basis.begin(), basis.end(),
                    [](const MPoly& g) { return !g.empty() && poly::is_constant(g); }))
        return {poly::constant(dom, dom.one())};

    // inter-reduce: drop generators whose lead is divisible by another lead,
    // then reduce tails
    std::vector<MPoly> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].empty()) continue;
        const PolyTerm& li = poly::leading_term(basis[i], less);
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || basis[j].empty()) continue;
            const PolyTerm& lj = poly::leading_term(basis[j], less);
            if (lj.key == li.key && j < i) {
                redundant = true;
                break;
            }
            if (lj.key != li.key && P.divides(lj.key, li.key)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    std::vector<MPoly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MPoly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        MPoly r = normal_form(dom, P, minimal[i], others, less);
        if (!r.empty()) reduced.push_back(make_monic(dom, r, less));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const MPoly& a, const MPoly& b) {
        return less(poly::leading_term(a, less).key, poly::leading_term(b, less).key);
    });
    return reduced;
}

bool contains_one(const std::vector<MPoly>& gb) {
    return std::any_of(gb.begin(), gb.end(),
                       [](const MPoly& g) { return !g.empty() && poly::is_constant(g); });
}

std::vector<std::uint64_t> staircase(const Packing& P, const std::vector<MPoly>& gb,
                                     const MonoLess& less, std::uint32_t maxdeg, bool& complete) {
    std::vector<std::uint64_t> leads;
    for (const auto& g : gb)
        if (!g.empty()) leads.push_back(poly::leading_term(g, less).key);

    std::vector<std::uint64_t> out;
    std::vector<std::uint32_t> e(P.vars(), 0);
    complete = true;
    // enumerate exponent tuples of total degree <= maxdeg
    while (true) {
        std::uint64_t key = P.pack(e);
        bool under = std::none_of(leads.begin(), leads.end(),
                                  [&](std::uint64_t l) { return P.divides(l, key); });
        if (under) {
            if (P.degree(key) == maxdeg) complete = false;  // may continue beyond bound
            out.push_back(key);
        }
        // next tuple with total degree <= maxdeg
        int i = 0;
        while (i < P.vars()) {
            ++e[i];
            std::uint32_t deg = 0;
            for (auto x : e) deg += x;
            if (deg <= maxdeg) break;
            e[i] = 0;
            ++i;
        }
        if (i == P.vars()) break;
    }
    return out;
}

}  // namespace groebner
}  // namespace fgl
