#pragma once

#include "fgl/invariants.hpp"

namespace fgl {

// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with marked point [0,1,0];
// singular curves are representable, smoothness is a query.
struct WeierstrassCurve {
    RingPtr ring;
    RingElement a1, a2, a3, a4, a6;

    static WeierstrassCurve make(const RingPtr& R, const RingElement& a1, const RingElement& a2,
                                 const RingElement& a3, const RingElement& a4,
                                 const RingElement& a6);
    static WeierstrassCurve parse(const RingPtr& R, const std::string& a1, const std::string& a2,
                                  const std::string& a3, const std::string& a4,
                                  const std::string& a6);
};

struct CurveInvariants {
    RingElement b2, b4, b6, b8, c4, c6, delta;
    // j as a point of the projective line: [c4^3 : delta]
    RingElement j_num, j_den;
};

CurveInvariants invariants(const WeierstrassCurve& C);

bool is_smooth(const WeierstrassCurve& C);               // delta a unit
bool is_generalized_elliptic(const WeierstrassCurve& C);  // 1 in (c4^3, c6^2, delta)

// the formal group law in the parameter t = -x/y at the marked point
FormalGroupLaw formal_group(const WeierstrassCurve& C, int bound, const LawOptions& opts = {});

enum class SupersingularVerdict { Ordinary, Supersingular, NotSmoothAtP };

// reduce mod p, expand the formal group to bound >= p^2, read the height
SupersingularVerdict supersingular(const WeierstrassCurve& C, const mpz_class& p);

// coordinate change x = u^2 x' + r, y = u^3 y' + u^2 s x' + t (u a unit)
WeierstrassCurve transform(const WeierstrassCurve& C, const RingElement& u, const RingElement& r,
                           const RingElement& s, const RingElement& t);

// y^2 = x(x-1)(x-lambda) for a designated ring element lambda
WeierstrassCurve legendre(const RingPtr& R, const std::string& lambda_var = "l");

// reduction of the curve mod p (identity when the ring already has char p)
WeierstrassCurve reduce_curve_mod_p(const WeierstrassCurve& C, const mpz_class& p);

}  // namespace fgl
