#include "fgl/weierstrass.hpp"

namespace fgl {

namespace {
const std::vector<std::string> kXY = {"x", "y"};
}

WeierstrassCurve WeierstrassCurve::make(const RingPtr& R, const RingElement& a1,
                                        const RingElement& a2, const RingElement& a3,
                                        const RingElement& a4, const RingElement& a6) {
    for (const RingElement* a : {&a1, &a2, &a3, &a4, &a6})
        if (!a->ring()->same_as(*R)) throw math_error("curve coefficient from a different ring");
    return {R, a1, a2, a3, a4, a6};
}

WeierstrassCurve WeierstrassCurve::parse(const RingPtr& R, const std::string& a1,
                                         const std::string& a2, const std::string& a3,
                                         const std::string& a4, const std::string& a6) {
    return make(R, R->parse(a1), R->parse(a2), R->parse(a3), R->parse(a4), R->parse(a6));
}

CurveInvariants invariants(const WeierstrassCurve& C) {
    const RingPtr& R = C.ring;
    auto k = [&](long n) { return R->from_int(n); };
    const RingElement &a1 = C.a1, &a2 = C.a2, &a3 = C.a3, &a4 = C.a4, &a6 = C.a6;

    RingElement b2 = a1 * a1 + k(4) * a2;
    RingElement b4 = k(2) * a4 + a1 * a3;
    RingElement b6 = a3 * a3 + k(4) * a6;
    RingElement b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    RingElement c4 = b2 * b2 - k(24) * b4;
    RingElement c6 = -(b2 * b2 * b2) + k(36) * b2 * b4 - k(216) * b6;
    RingElement delta =
        -(b2 * b2) * b8 - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6;

    if (k(4) * b8 != b2 * b6 - b4 * b4)
        throw internal_error("4*b8 = b2*b6 - b4^2 failed");
    if (c4 * c4 * c4 - c6 * c6 != k(1728) * delta)
        throw internal_error("c4^3 - c6^2 = 1728*delta failed");

    CurveInvariants inv{b2, b4, b6, b8, c4, c6, delta, c4 * c4 * c4, delta};
    return inv;
}

bool is_smooth(const WeierstrassCurve& C) { return is_unit(invariants(C).delta).unit; }

bool is_generalized_elliptic(const WeierstrassCurve& C) {
    CurveInvariants inv = invariants(C);
    const RingElement g1 = inv.c4 * inv.c4 * inv.c4;
    const RingElement g2 = inv.c6 * inv.c6;
    const RingElement g3 = inv.delta;
    for (const RingElement* g : {&g1, &g2, &g3})
        if (is_unit(*g).unit) return true;
    // ideal membership of 1 via the quotient ring collapsing
    try {
        RingPtr Q = Ring::quotient(C.ring, {g1.to_string(), g2.to_string(), g3.to_string()});
        return Q->is_zero_ring();
    } catch (const unsupported_error&) {
        throw unsupported_error(
            "generalized-elliptic test undecidable over " + C.ring->label() +
            ": no generator is a literal unit and the ideal is outside the supported class");
    }
}

FormalGroupLaw formal_group(const WeierstrassCurve& C, int bound, const LawOptions& opts) {
    if (bound < 3) throw math_error("elliptic formal group needs bound >= 3");
    const RingPtr& R = C.ring;
    // the divided-difference slope at degree d needs w at degree d+1, so the
    // whole construction runs one degree deep and truncates at the end
    const int N = bound + 1;
    const Scalar sa1 = C.a1.payload(), sa2 = C.a2.payload(), sa3 = C.a3.payload(),
                 sa4 = C.a4.payload(), sa6 = C.a6.payload();

    // w(t) = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3,
    // solved by fixed-point iteration; w = -1/y in the parameter t = -x/y
    TruncatedSeries t = TruncatedSeries::variable(R, {"x"}, N, "x");
    TruncatedSeries t3 = t.mono_mul({2}, R->s_one());
    TruncatedSeries w = t3;
    for (int it = 0; it <= N; ++it) {
        TruncatedSeries w2 = w * w;
        TruncatedSeries next = t3 + (w.mono_mul({1}, sa1)) + (w.mono_mul({2}, sa2)) +
                               w2.scaled_scalar(sa3) + w2.mono_mul({1}, sa4) +
                               (w2 * w).scaled_scalar(sa6);
        if (equal_to_bound(next, w)) {
            w = std::move(next);
            break;
        }
        w = std::move(next);
    }

    // slope of the chord through (t1, w(t1)), (t2, w(t2)) as the divided
    // difference: lambda = sum_n w_n sum_{i+j=n-1} t1^i t2^j
    Packing P2 = Packing::graded(2);
    std::vector<TruncatedSeries::Term> lam_terms;
    for (const auto& wt : w.terms()) {
        std::uint32_t n = w.packing().exponent(wt.key, 0);
        if (n == 0 || static_cast<int>(n) - 1 > N) continue;
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint32_t e[2] = {i, n - 1 - i};
            lam_terms.push_back({P2.pack(e), wt.c});
        }
    }
    TruncatedSeries lambda = TruncatedSeries::from_terms(R, kXY, N, std::move(lam_terms));

    TruncatedSeries w1 = w.embedded(kXY, N);  // w(t1)
    TruncatedSeries nu = w1 - lambda.mono_mul({1, 0}, R->s_one());

    TruncatedSeries lambda2 = lambda * lambda;
    TruncatedSeries lambda3 = lambda2 * lambda;
    TruncatedSeries one2 = TruncatedSeries::constant(R, kXY, N, R->one());

    TruncatedSeries A = one2 + lambda.scaled_scalar(sa2) + lambda2.scaled_scalar(sa4) +
                        lambda3.scaled_scalar(sa6);
    TruncatedSeries B = lambda.scaled_scalar(sa1) + lambda2.scaled_scalar(sa3) +
                        nu * (one2.scaled_scalar(sa2) +
                              lambda.scaled_scalar(R->s_mul(R->s_from_mpz(2), sa4)) +
                              lambda2.scaled_scalar(R->s_mul(R->s_from_mpz(3), sa6)));

    TruncatedSeries S = div_unit(B, A);
    TruncatedSeries x2 = TruncatedSeries::variable(R, kXY, N, "x");
    TruncatedSeries y2 = TruncatedSeries::variable(R, kXY, N, "y");
    TruncatedSeries third = -x2 - y2 - S;      // t-coordinate of the third point
    TruncatedSeries w3 = lambda * third + nu;  // it lies on the chord

    // inversion: t(-P) = -t/(1 - a1 t - a3 w) evaluated at the third point
    TruncatedSeries D =
        one2 - third.scaled_scalar(sa1) - w3.scaled_scalar(sa3);
    TruncatedSeries F = div_unit(-third, D).truncated(bound);
    return FormalGroupLaw::from_series(std::move(F), opts);
}

WeierstrassCurve reduce_curve_mod_p(const WeierstrassCurve& C, const mpz_class& p) {
    const RingPtr& R = C.ring;
    mpz_class ch = R->characteristic();
    if (ch == p) return C;
    RingPtr Fp = Ring::prime_field(p);
    auto map_elem = [&](const RingElement& a) -> RingElement {
        const RingDescriptor& d = *R->descriptor();
        if (d.kind == RingDescriptor::Kind::Integers)
            return Fp->from_int(std::get<mpz_class>(std::get<BaseScalar>(a.payload())));
        if (d.kind == RingDescriptor::Kind::Rationals) {
            const mpq_class& q = std::get<mpq_class>(std::get<BaseScalar>(a.payload()));
            return {Fp, Fp->s_from_mpq(q)};
        }
        if (d.kind == RingDescriptor::Kind::Mod && d.modulus % p == 0)
            return Fp->from_int(R->base_domain().lift(std::get<BaseScalar>(a.payload())));
        throw unsupported_error("cannot reduce a curve over " + R->label() + " modulo " +
                                p.get_str());
    };
    try {
        return WeierstrassCurve::make(Fp, map_elem(C.a1), map_elem(C.a2), map_elem(C.a3),
                                      map_elem(C.a4), map_elem(C.a6));
    } catch (const math_error& e) {
        throw unsupported_error("cannot reduce a curve over " + R->label() + " modulo " +
                                p.get_str() + ": " + e.what());
    }
}

SupersingularVerdict supersingular(const WeierstrassCurve& C, const mpz_class& p) {
    if (!mpz_is_prime(p)) throw math_error("p must be prime");
    WeierstrassCurve Cp = reduce_curve_mod_p(C, p);
    if (!is_unit(invariants(Cp).delta).unit) return SupersingularVerdict::NotSmoothAtP;
    if (p > 64) throw unsupported_error("supersingular check capped at p <= 64");
    int N = static_cast<int>(p.get_si() * p.get_si() + p.get_si() - 1);
    LawOptions opts;
    opts.assoc_bound = std::min(N, 8);
    FormalGroupLaw F = formal_group(Cp, N, opts);
    HeightReport h = height(F, p);
    if (h.verdict.kind == HeightVerdict::Kind::Exact && h.verdict.n == 1)
        return SupersingularVerdict::Ordinary;
    if (h.verdict.kind == HeightVerdict::Kind::Exact && h.verdict.n == 2)
        return SupersingularVerdict::Supersingular;
    throw internal_error("elliptic formal group has unexpected height report");
}

WeierstrassCurve transform(const WeierstrassCurve& C, const RingElement& u, const RingElement& r,
                           const RingElement& s, const RingElement& t) {
    const RingPtr& R = C.ring;
    auto ur = is_unit(u);
    if (!ur.unit) throw math_error("transform needs a unit scale factor u");
    RingElement ui = *ur.inverse;
    RingElement ui2 = ui * ui;
    RingElement ui3 = ui2 * ui;
    RingElement ui4 = ui2 * ui2;
    RingElement ui6 = ui3 * ui3;
    auto k = [&](long n) { return R->from_int(n); };

    RingElement a1 = (C.a1 + k(2) * s) * ui;
    RingElement a2 = (C.a2 - s * C.a1 + k(3) * r - s * s) * ui2;
    RingElement a3 = (C.a3 + r * C.a1 + k(2) * t) * ui3;
    RingElement a4 =
        (C.a4 - s * C.a3 + k(2) * r * C.a2 - (t + r * s) * C.a1 + k(3) * r * r - k(2) * s * t) *
        ui4;
    RingElement a6 =
        (C.a6 + r * C.a4 + r * r * C.a2 + r * r * r - t * C.a3 - t * t - r * t * C.a1) * ui6;
    return WeierstrassCurve::make(R, a1, a2, a3, a4, a6);
}

WeierstrassCurve legendre(const RingPtr& R, const std::string& lambda_var) {
    RingElement l = R->var(lambda_var);
    RingElement zero = R->zero();
    // y^2 = x(x-1)(x-l) = x^3 - (1+l)x^2 + l x
    return WeierstrassCurve::make(R, zero, -(R->one() + l), zero, l, zero);
}

}  // namespace fgl
