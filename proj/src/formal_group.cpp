#include "fgl/formal_group.hpp"

#include <algorithm>

namespace fgl {

namespace {

const std::vector<std::string> kLawVars = {"x", "y"};

std::string exp_string(const TruncatedSeries& s, std::uint64_t key) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.vars().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.packing().exponent(key, static_cast<int>(i)));
    }
    return out + ")";
}

// first key at which a and b differ (as truncated series over the same vars)
std::optional<std::uint64_t> first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries d = a - b;
    if (d.is_zero()) return std::nullopt;
    return d.terms().front().key;
}

}  // namespace

LawSpec LawSpec::additive() { return {}; }

LawSpec LawSpec::multiplicative(std::string b) {
    LawSpec s;
    s.kind = Kind::Multiplicative;
    s.unit_expr = std::move(b);
    return s;
}

LawSpec LawSpec::from_log(TruncatedSeries log) {
    LawSpec s;
    s.kind = Kind::FromLog;
    s.series = std::move(log);
    return s;
}

LawSpec LawSpec::honda(const mpz_class& p, int n) {
    LawSpec s;
    s.kind = Kind::Honda;
    s.p = p;
    s.n = n;
    return s;
}

LawSpec LawSpec::p_typical(const mpz_class& p, std::vector<std::string> v) {
    LawSpec s;
    s.kind = Kind::PTypical;
    s.p = p;
    s.v_exprs = std::move(v);
    return s;
}

LawSpec LawSpec::explicit_series(TruncatedSeries F) {
    LawSpec s;
    s.kind = Kind::Explicit;
    s.series = std::move(F);
    return s;
}

// ---------------------------------------------------------------------------
// axiom validation
// ---------------------------------------------------------------------------

void validate_law_axioms(const TruncatedSeries& F, const LawOptions& opts) {
    if (F.vars() != kLawVars) throw math_error("formal group law must use variables x, y");
    const RingPtr& R = F.ring();
    const Packing& P = F.packing();
    const int N = F.bound();
    if (N < 1) throw math_error("formal group law needs bound >= 1");

    // unitality: F(x,0) = x and F(0,y) = y
    for (const auto& t : F.terms()) {
        std::uint32_t i = P.exponent(t.key, 0), j = P.exponent(t.key, 1);
        if (j == 0 && !(i == 1 && R->s_equal(t.c, R->s_one())))
            throw axiom_error("unitality fails: F(x,0) has coefficient " + R->to_string(t.c) +
                              " at " + exp_string(F, t.key));
        if (i == 0 && !(j == 1 && R->s_equal(t.c, R->s_one())))
            throw axiom_error("unitality fails: F(0,y) has coefficient " + R->to_string(t.c) +
                              " at " + exp_string(F, t.key));
    }
    if (!R->is_zero_ring()) {
        std::uint32_t e10[2] = {1, 0}, e01[2] = {0, 1};
        if (!F.coefficient({1, 0}).is_one())
            throw axiom_error("unitality fails: coefficient at " +
                              exp_string(F, P.pack(e10)) + " is not 1");
        if (!F.coefficient({0, 1}).is_one())
            throw axiom_error("unitality fails: coefficient at " +
                              exp_string(F, P.pack(e01)) + " is not 1");
    }

    // commutativity: coefficientwise swap
    for (const auto& t : F.terms()) {
        std::uint32_t e[2] = {P.exponent(t.key, 1), P.exponent(t.key, 0)};
        if (!R->s_equal(t.c, F.coefficient({e[0], e[1]}).payload()))
            throw axiom_error("commutativity fails at " + exp_string(F, t.key));
    }

    // associativity (trivariate)
    int Na = opts.assoc_bound < 0 ? N : std::min(N, opts.assoc_bound);
    std::vector<std::string> v3 = {"x", "y", "z"};
    TruncatedSeries Fxy = F.embedded(v3, Na);
    TruncatedSeries x3 = TruncatedSeries::variable(R, v3, Na, "x");
    TruncatedSeries y3 = TruncatedSeries::variable(R, v3, Na, "y");
    TruncatedSeries z3 = TruncatedSeries::variable(R, v3, Na, "z");
    TruncatedSeries Fyz = substitute(F, {{"x", y3}, {"y", z3}});
    TruncatedSeries lhs = substitute(F, {{"x", Fxy}, {"y", z3}});
    TruncatedSeries rhs = substitute(F, {{"x", x3}, {"y", Fyz}});
    if (auto bad = first_difference(lhs, rhs)) {
        throw axiom_error("associativity fails at " + exp_string(lhs, *bad) + ": F(F(x,y),z) has " +
                          lhs.coefficient(lhs.packing().unpack(*bad)).to_string() +
                          ", F(x,F(y,z)) has " +
                          rhs.coefficient(rhs.packing().unpack(*bad)).to_string());
    }
}

// ---------------------------------------------------------------------------
// constructors
// ---------------------------------------------------------------------------

namespace {

TruncatedSeries additive_series(const RingPtr& R, int N) {
    return TruncatedSeries::variable(R, kLawVars, N, "x") +
           TruncatedSeries::variable(R, kLawVars, N, "y");
}

TruncatedSeries multiplicative_series(const RingPtr& R, int N, const RingElement& b) {
    auto x = TruncatedSeries::variable(R, kLawVars, N, "x");
    auto y = TruncatedSeries::variable(R, kLawVars, N, "y");
    return x + y + (x * y).scaled(b);
}

TruncatedSeries law_from_log(const TruncatedSeries& log, int N) {
    const RingPtr& R = log.ring();
    if (!R->is_q_algebra()) throw math_error("FromLog needs a Q-algebra");
    if (log.bound() < N) throw math_error("log series bound is smaller than the requested bound");
    TruncatedSeries l = log.truncated(N);
    if (l.vars().size() != 1) throw math_error("log series must be univariate");
    if (!l.coefficient({0}).is_zero()) throw math_error("log series needs zero constant term");
    if (!R->s_inverse(l.coefficient({1}).payload()))
        throw math_error("log series needs a unit linear coefficient");
    // F = exp(log x + log y)
    TruncatedSeries exp = reversion(l);
    TruncatedSeries lx = l.embedded(kLawVars, N);
    TruncatedSeries ly = substitute(l, {{l.vars()[0],
                                         TruncatedSeries::variable(R, kLawVars, N, "y")}});
    return substitute(exp, {{l.vars()[0], lx + ly}});
}

// Araki logarithm over Q[v1..vk]: l_0 = 1 and
//   l_n (p - p^(p^n)) = sum_{0 <= i < n} l_i v_{n-i}^(p^i)
TruncatedSeries araki_law_over_q(const mpz_class& p, int k, int N, RingPtr& aux_out) {
    std::vector<std::string> vnames;
    for (int i = 1; i <= k; ++i) vnames.push_back("v" + std::to_string(i));
    RingPtr A = k == 0 ? Ring::rationals() : Ring::polynomial(Ring::rationals(), vnames);
    aux_out = A;

    std::vector<RingElement> l = {A->one()};
    std::vector<mpz_class> ppow = {1};  // p^i
    while (ppow.back() * p <= N) ppow.push_back(ppow.back() * p);
    int nmax = static_cast<int>(ppow.size()) - 1;

    auto v_of = [&](int j) -> RingElement {
        if (j < 1 || j > k) return A->zero();
        return A->var("v" + std::to_string(j));
    };

    for (int n = 1; n <= nmax; ++n) {
        RingElement acc = A->zero();
        for (int i = 0; i < n; ++i) acc = acc + l[i] * v_of(n - i).pow(ppow[i]);
        // divide by p - p^(p^n) in Q[v]
        mpz_class ppn;
        mpz_pow_ui(ppn.get_mpz_t(), p.get_mpz_t(), ppow[n].get_ui());
        mpq_class denom(p - ppn);
        RingElement scale = RingElement(A, A->s_from_mpq(1 / denom));
        l.push_back(acc * scale);
    }

    std::vector<TruncatedSeries::Term> terms;
    Packing P1 = Packing::graded(1);
    terms.push_back({P1.var_key(0, 1), A->one().payload()});
    for (int n = 1; n <= nmax; ++n) {
        if (l[n].is_zero()) continue;
        terms.push_back({P1.var_key(0, static_cast<std::uint32_t>(ppow[n].get_ui())),
                         l[n].payload()});
    }
    TruncatedSeries log = TruncatedSeries::from_terms(A, {"x"}, N, std::move(terms));
    return law_from_log(log, N);
}

void check_p_integrality(const TruncatedSeries& F, const mpz_class& p) {
    const RingPtr& A = F.ring();
    for (const auto& t : F.terms()) {
        // coefficients are rationals or polynomials with rational coefficients
        MPoly raw = A->to_raw(t.c);
        for (const auto& pt : raw) {
            const mpq_class& q = std::get<mpq_class>(pt.c);
            if (q.get_den() % p == 0)
                throw internal_error(
                    "p-typical construction produced a non-p-integral coefficient at degree " +
                    std::to_string(F.packing().degree(t.key)));
        }
    }
}

}  // namespace

FormalGroupLaw FormalGroupLaw::from_series(TruncatedSeries F, const LawOptions& opts) {
    validate_law_axioms(F, opts);
    return FormalGroupLaw(std::move(F));
}

FormalGroupLaw FormalGroupLaw::build(const LawSpec& spec, const RingPtr& ring, int bound,
                                     const LawOptions& opts) {
    switch (spec.kind) {
        case LawSpec::Kind::Additive:
            return from_series(additive_series(ring, bound), opts);
        case LawSpec::Kind::Multiplicative: {
            RingElement b = ring->parse(spec.unit_expr);
            if (!is_unit(b).unit)
                throw math_error("multiplicative coefficient '" + spec.unit_expr +
                                 "' is not a unit");
            return from_series(multiplicative_series(ring, bound, b), opts);
        }
        case LawSpec::Kind::FromLog: {
            if (!spec.series) throw math_error("FromLog needs a log series");
            if (!spec.series->ring()->same_as(*ring))
                throw math_error("log series is over a different ring");
            return from_series(law_from_log(*spec.series, bound), opts);
        }
        case LawSpec::Kind::Honda: {
            if (!mpz_is_prime(spec.p)) throw math_error("p must be prime");
            if (spec.n < 1) throw math_error("Honda height must be >= 1");
            if (!ring->from_int(spec.p).is_zero())
                throw math_error("Honda law needs an F_p-algebra (p = " + spec.p.get_str() +
                                 " does not vanish in " + ring->label() + ")");
            std::vector<std::string> v(spec.n, "0");
            v.back() = "1";
            LawSpec pt = LawSpec::p_typical(spec.p, v);
            return build(pt, ring, bound, opts);
        }
        case LawSpec::Kind::PTypical: {
            if (!mpz_is_prime(spec.p)) throw math_error("p must be prime");
            const int k = static_cast<int>(spec.v_exprs.size());
            RingPtr aux;
            TruncatedSeries FA = araki_law_over_q(spec.p, k, bound, aux);
            check_p_integrality(FA, spec.p);
            std::map<std::string, RingElement> images;
            std::vector<RingElement> v_values;
            for (int i = 1; i <= k; ++i) {
                RingElement vi = ring->parse(spec.v_exprs[i - 1]);
                v_values.push_back(vi);
                images.emplace("v" + std::to_string(i), vi);
            }
            RingHom h = RingHom::make(aux, ring, images);
            TruncatedSeries F = series_base_change(FA, h);
            FormalGroupLaw law = from_series(std::move(F), opts);

            // the defining self-check: [p](x) = px +_F v1 x^p +_F ... +_F vk x^(p^k)
            TruncatedSeries ps = law.p_series(spec.p);
            TruncatedSeries rhs =
                TruncatedSeries::variable(ring, {"x"}, bound, "x").scaled(ring->from_int(spec.p));
            mpz_class pe = 1;
            for (int i = 1; i <= k; ++i) {
                pe *= spec.p;
                if (pe > bound) break;
                TruncatedSeries term =
                    TruncatedSeries::variable(ring, {"x"}, bound, "x")
                        .mono_mul({static_cast<std::uint32_t>(pe.get_ui() - 1)},
                                  v_values[i - 1].payload());
                rhs = law.plus(rhs, term);
            }
            if (!equal_to_bound(ps, rhs))
                throw internal_error("p-typical construction violates its p-series identity");
            return law;
        }
        case LawSpec::Kind::Explicit: {
            if (!spec.series) throw math_error("Explicit law needs a series");
            if (!spec.series->ring()->same_as(*ring))
                throw math_error("explicit series is over a different ring");
            return from_series(spec.series->truncated(std::min(bound, spec.series->bound())),
                               opts);
        }
    }
    throw internal_error("bad law spec");
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

TruncatedSeries FormalGroupLaw::plus(const TruncatedSeries& a, const TruncatedSeries& b) const {
    return substitute(F_, {{"x", a}, {"y", b}});
}

TruncatedSeries FormalGroupLaw::formal_inverse() const {
    const RingPtr& R = ring();
    const int N = bound();
    TruncatedSeries x = TruncatedSeries::variable(R, {"x"}, N, "x");
    TruncatedSeries inv = -x;
    for (int d = 2; d <= N; ++d) {
        TruncatedSeries comp = substitute(F_, {{"x", x}, {"y", inv}});
        Scalar err = comp.coefficient({static_cast<std::uint32_t>(d)}).payload();
        if (R->s_is_zero(err)) continue;
        inv = inv + x.mono_mul({static_cast<std::uint32_t>(d - 1)}, R->s_neg(err));
    }
    return inv;
}

TruncatedSeries FormalGroupLaw::n_series(const mpz_class& n) const {
    const RingPtr& R = ring();
    const int N = bound();
    TruncatedSeries x = TruncatedSeries::variable(R, {"x"}, N, "x");
    if (n == 0) return TruncatedSeries::zero(R, {"x"}, N);
    if (n < 0) {
        TruncatedSeries pos = n_series(-n);
        return substitute(formal_inverse(), {{"x", pos}});
    }
    TruncatedSeries acc = x;
    for (mpz_class i = 1; i < n; ++i) acc = substitute(F_, {{"x", acc}, {"y", x}});
    return acc;
}

TruncatedSeries FormalGroupLaw::p_series(const mpz_class& p) const {
    if (!mpz_is_prime(p)) throw math_error("p must be prime");
    return n_series(p);
}

FormalGroupLaw FormalGroupLaw::base_change(const RingHom& h, const LawOptions& opts) const {
    return from_series(series_base_change(F_, h), opts);
}

}  // namespace fgl
