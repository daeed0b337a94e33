#include "fgl/poly.hpp"

#include <algorithm>
#include <map>

namespace fgl {

MonoLess lex_less() {
    return [](std::uint64_t a, std::uint64_t b) { return a < b; };
}

MonoLess grevlex_less(const Packing& P) {
    return [P](std::uint64_t a, std::uint64_t b) {
        std::uint32_t da = P.degree(a), db = P.degree(b);
        if (da != db) return da < db;
        // a < b if at the last index where they differ a has a LARGER exponent
        for (int i = P.vars() - 1; i >= 0; --i) {
            std::uint32_t ea = P.exponent(a, i), eb = P.exponent(b, i);
            if (ea != eb) return ea > eb;
        }
        return false;
    };
}

MonoLess elim_less(const Packing& P, int block_var) {
    MonoLess inner = grevlex_less(P);
    return [P, block_var, inner](std::uint64_t a, std::uint64_t b) {
        std::uint32_t ea = P.exponent(a, block_var), eb = P.exponent(b, block_var);
        if (ea != eb) return ea < eb;
        return inner(a, b);
    };
}

namespace poly {

MPoly zero() { return {}; }

MPoly constant(const BaseDomain& dom, const BaseScalar& c) {
    if (dom.is_zero(c)) return {};
    return {PolyTerm{0, c}};
}

MPoly variable(const BaseDomain& dom, const Packing& P, int var, std::uint32_t e) {
    if (dom.is_zero_ring()) return {};
    if (e == 0) return constant(dom, dom.one());
    return {PolyTerm{P.var_key(var, e), dom.one()}};
}

bool is_zero(const MPoly& f) { return f.empty(); }

bool is_constant(const MPoly& f) {
    return f.empty() || (f.size() == 1 && f[0].key == 0);
}

BaseScalar constant_coeff(const BaseDomain& dom, const MPoly& f) {
    if (!f.empty() && f.front().key == 0) return f.front().c;
    return dom.zero();
}

void normalize(const BaseDomain& dom, MPoly& f) {
    std::sort(f.begin(), f.end(),
              [](const PolyTerm& a, const PolyTerm& b) { return a.key < b.key; });
    MPoly out;
    out.reserve(f.size());
    for (auto& t : f) {
        if (!out.empty() && out.back().key == t.key)
            out.back().c = dom.add(out.back().c, t.c);
        else
            out.push_back(t);
        if (!out.empty() && dom.is_zero(out.back().c)) out.pop_back();
    }
    f = std::move(out);
}

MPoly add(const BaseDomain& dom, const MPoly& a, const MPoly& b) {
    MPoly out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].key < b[j].key)
            out.push_back(a[i++]);
        else if (b[j].key < a[i].key)
            out.push_back(b[j++]);
        else {
            BaseScalar c = dom.add(a[i].c, b[j].c);
            if (!dom.is_zero(c)) out.push_back({a[i].key, std::move(c)});
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

MPoly sub(const BaseDomain& dom, const MPoly& a, const MPoly& b) {
    return add(dom, a, neg(dom, b));
}

MPoly neg(const BaseDomain& dom, const MPoly& a) {
    MPoly out = a;
    for (auto& t : out) t.c = dom.neg(t.c);
    return out;
}

MPoly mul(const BaseDomain& dom, const Packing& P, const MPoly& a, const MPoly& b) {
    if (a.empty() || b.empty()) return {};
    std::map<std::uint64_t, BaseScalar> acc;
    const MPoly& outer = a.size() <= b.size() ? a : b;
    const MPoly& inner = a.size() <= b.size() ? b : a;
    for (const auto& ta : outer) {
        for (const auto& tb : inner) {
            std::uint64_t key = P.mul_checked(ta.key, tb.key);
            BaseScalar c = dom.mul(ta.c, tb.c);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, std::move(c));
            else
                it->second = dom.add(it->second, c);
        }
    }
    MPoly out;
    out.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!dom.is_zero(c)) out.push_back({k, std::move(c)});
    return out;
}

MPoly scalar_mul(const BaseDomain& dom, const MPoly& a, const BaseScalar& c) {
    if (dom.is_zero(c)) return {};
    MPoly out;
    out.reserve(a.size());
    for (const auto& t : a) {
        BaseScalar v = dom.mul(t.c, c);
        if (!dom.is_zero(v)) out.push_back({t.key, std::move(v)});
    }
    return out;
}

MPoly mono_mul(const BaseDomain& dom, const Packing& P, const MPoly& a, std::uint64_t key,
               const BaseScalar& c) {
    if (dom.is_zero(c)) return {};
    MPoly out;
    out.reserve(a.size());
    for (const auto& t : a) {
        BaseScalar v = dom.mul(t.c, c);
        if (!dom.is_zero(v)) out.push_back({P.mul_checked(t.key, key), std::move(v)});
    }
    return out;
}

MPoly pow(const BaseDomain& dom, const Packing& P, const MPoly& a, std::uint32_t e) {
    MPoly out = constant(dom, dom.one());
    MPoly base = a;
    while (e > 0) {
        if (e & 1) out = mul(dom, P, out, base);
        e >>= 1;
        if (e) base = mul(dom, P, base, base);
    }
    return out;
}

bool equal(const BaseDomain& dom, const MPoly& a, const MPoly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].key != b[i].key || !dom.equal(a[i].c, b[i].c)) return false;
    return true;
}

std::uint32_t total_degree(const Packing& P, const MPoly& f) {
    std::uint32_t d = 0;
    for (const auto& t : f) d = std::max(d, P.degree(t.key));
    return d;
}

std::uint32_t degree_in(const Packing& P, const MPoly& f, int var) {
    std::uint32_t d = 0;
    for (const auto& t : f) d = std::max(d, P.exponent(t.key, var));
    return d;
}

bool uses_var(const Packing& P, const MPoly& f, int var) {
    for (const auto& t : f)
        if (P.exponent(t.key, var) != 0) return true;
    return false;
}

MPoly coeff_of_var_power(const BaseDomain& dom, const Packing& P, const MPoly& f, int var,
                         std::uint32_t e) {
    MPoly out;
    for (const auto& t : f) {
        if (P.exponent(t.key, var) != e) continue;
        auto exps = P.unpack(t.key);
        exps[var] = 0;
        out.push_back({P.pack(exps), t.c});
    }
    normalize(dom, out);
    return out;
}

const PolyTerm& leading_term(const MPoly& f, const MonoLess& less) {
    if (f.empty()) throw internal_error("leading term of zero polynomial");
    const PolyTerm* best = &f[0];
    for (const auto& t : f)
        if (less(best->key, t.key)) best = &t;
    return *best;
}

MPoly substitute(const BaseDomain& dom, const Packing& P, const MPoly& f,
                 const std::vector<const MPoly*>& images) {
    MPoly out;
    for (const auto& t : f) {
        MPoly term = constant(dom, t.c);
        auto exps = P.unpack(t.key);
        std::vector<std::uint32_t> kept(P.vars(), 0);
        for (int v = 0; v < P.vars(); ++v) {
            if (exps[v] == 0) continue;
            if (images[v] == nullptr)
                kept[v] = exps[v];
            else
                term = mul(dom, P, term, pow(dom, P, *images[v], exps[v]));
        }
        term = mono_mul(dom, P, term, P.pack(kept), dom.one());
        out = add(dom, out, term);
    }
    return out;
}

std::optional<MPoly> divide_exact(const BaseDomain& dom, const Packing& P, const MPoly& a,
                                  const MPoly& b) {
    if (b.empty()) return std::nullopt;
    MPoly rem = a;
    MPoly quot;
    MonoLess less = grevlex_less(P);
    const PolyTerm& lb = leading_term(b, less);
    while (!rem.empty()) {
        const PolyTerm& lr = leading_term(rem, less);
        std::uint64_t qkey;
        if (!P.divide(lr.key, lb.key, qkey)) return std::nullopt;
        auto qc = dom.divide_exact(lr.c, lb.c);
        if (!qc) return std::nullopt;
        quot.push_back({qkey, *qc});
        rem = sub(dom, rem, mono_mul(dom, P, b, qkey, *qc));
    }
    normalize(dom, quot);
    return quot;
}

MPoly map_coeffs(const BaseDomain& src, const BaseDomain& dst, const MPoly& f) {
    MPoly out;
    out.reserve(f.size());
    for (const auto& t : f) {
        BaseScalar c;
        if (src.kind() == ScalarKind::Rationals)
            c = dst.from_mpq(std::get<mpq_class>(t.c));
        else
            c = dst.from_mpz(src.lift(t.c));
        if (!dst.is_zero(c)) out.push_back({t.key, std::move(c)});
    }
    return out;
}

mpz_class int_content(const BaseDomain& dom, const MPoly& f) {
    mpz_class g = 0;
    for (const auto& t : f) {
        mpz_class v = dom.lift(t.c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    return g;
}

}  // namespace poly
}  // namespace fgl
