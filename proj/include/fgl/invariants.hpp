#pragma once

#include "fgl/formal_group.hpp"

namespace fgl {

// the canonical invariant differential eta = g(x) dx with g = 1/F_y(x,0)
TruncatedSeries invariant_differential(const FormalGroupLaw& F);

// coordinate form of the invariance condition:
//   g(F(x,y)) * F_x(x,y) = g(x)  and  g(F(x,y)) * F_y(x,y) = g(y)
bool check_invariance(const FormalGroupLaw& F, const TruncatedSeries& g);

// log = integral of the invariant differential (Q-algebras); exp = reversion
TruncatedSeries logarithm(const FormalGroupLaw& F);
TruncatedSeries exponential(const FormalGroupLaw& F);

// A homomorphism of formal group laws: phi(F1(x,y)) = F2(phi(x), phi(y)).
class SeriesHomomorphism {
public:
    static SeriesHomomorphism make(FormalGroupLaw src, FormalGroupLaw tgt, TruncatedSeries phi);

    const FormalGroupLaw& source() const { return src_; }
    const FormalGroupLaw& target() const { return tgt_; }
    const TruncatedSeries& series() const { return phi_; }

    RingElement differential() const;  // phi'(0)
    bool is_isomorphism() const;

private:
    SeriesHomomorphism(FormalGroupLaw s, FormalGroupLaw t, TruncatedSeries phi)
        : src_(std::move(s)), tgt_(std::move(t)), phi_(std::move(phi)) {}
    FormalGroupLaw src_, tgt_;
    TruncatedSeries phi_;
};

SeriesHomomorphism compose(const SeriesHomomorphism& outer, const SeriesHomomorphism& inner);

// value living in the twist-th tensor power of the invariant differentials
struct TwistedElement {
    RingElement value;
    long twist = 0;
};
TwistedElement twisted_mul(const TwistedElement& a, const TwistedElement& b);

struct HeightVerdict {
    enum class Kind { Exact, AtLeast, InfiniteToBound };
    Kind kind = Kind::InfiniteToBound;
    int n = 0;                                // Exact / AtLeast
    std::optional<RingElement> unit_witness;  // Exact: the leading unit
};

struct USeqEntry {
    int n;
    TwistedElement value;  // u_n with twist p^n - 1
    RingPtr ring;          // quotient ring in which u_n was read
};

struct HeightReport {
    mpz_class p;
    int bound;
    HeightVerdict verdict;
    std::vector<USeqEntry> u_sequence;
};

// leading p-power analysis of the p-series of a law over an F_p-algebra
HeightReport height(const FormalGroupLaw& F, const mpz_class& p);

// iterated quotient chain u_0 = p, u_n = coefficient of x^(p^n) in the
// p-series modulo (p, u_1, ..., u_{n-1}); stops at a unit (exact height)
HeightReport u_sequence(const FormalGroupLaw& F, const mpz_class& p, int n_max);

struct IsoSearchResult {
    enum class Kind { Found, NeedsExtension, NoneToBound };
    Kind kind = Kind::NoneToBound;
    std::optional<SeriesHomomorphism> iso;  // over `field`
    RingPtr field;
    int extension_degree = 1;
    std::string reason;  // negative outcomes
};

// degree-by-degree isomorphism search over a finite field, extending the
// field by adjoining roots of deterministic irreducible polynomials
IsoSearchResult find_isomorphism(const FormalGroupLaw& F1, const FormalGroupLaw& F2,
                                 int max_ext_degree);

}  // namespace fgl
