#pragma once

#include <optional>

#include "fgl/series.hpp"

namespace fgl {

// Validation policy for law constructors.  The trivariate associativity check
// dominates construction cost at large bounds; callers that certify heights
// at bounds around p^2 cap it and rely on the construction invariants plus
// the small-bound property suites.
struct LawOptions {
    int assoc_bound = -1;  // -1 = check associativity to the full bound
};

struct LawSpec {
    enum class Kind { Additive, Multiplicative, FromLog, Honda, PTypical, Explicit };

    Kind kind = Kind::Additive;
    std::string unit_expr = "1";                // Multiplicative coefficient b
    std::optional<TruncatedSeries> series;      // FromLog / Explicit
    mpz_class p = 0;                            // Honda / PTypical
    int n = 1;                                  // Honda height
    std::vector<std::string> v_exprs;           // PTypical v-values

    static LawSpec additive();
    static LawSpec multiplicative(std::string b = "1");
    static LawSpec from_log(TruncatedSeries log);
    static LawSpec honda(const mpz_class& p, int n);
    static LawSpec p_typical(const mpz_class& p, std::vector<std::string> v);
    static LawSpec explicit_series(TruncatedSeries F);
};

// A one-dimensional formal group law F(x,y): unital, commutative and
// associative to the truncation bound.  Constructors validate the axioms.
class FormalGroupLaw {
public:
    static FormalGroupLaw build(const LawSpec& spec, const RingPtr& ring, int bound,
                                const LawOptions& opts = {});
    static FormalGroupLaw from_series(TruncatedSeries F, const LawOptions& opts = {});

    const TruncatedSeries& series() const { return F_; }
    const RingPtr& ring() const { return F_.ring(); }
    int bound() const { return F_.bound(); }

    // a +_F b for series with zero constant term over the same ring
    TruncatedSeries plus(const TruncatedSeries& a, const TruncatedSeries& b) const;

    // the series i with F(x, i(x)) = 0
    TruncatedSeries formal_inverse() const;

    // [n](x), recursively [n] = F([n-1](x), x); negative n via the inverse
    TruncatedSeries n_series(const mpz_class& n) const;
    TruncatedSeries p_series(const mpz_class& p) const;

    FormalGroupLaw base_change(const RingHom& h, const LawOptions& opts = {}) const;

    bool operator==(const FormalGroupLaw& o) const {
        return ring()->same_as(*o.ring()) && equal_to_bound(F_, o.F_);
    }

private:
    explicit FormalGroupLaw(TruncatedSeries F) : F_(std::move(F)) {}
    TruncatedSeries F_;
};

// throws axiom_error naming the first failing coefficient
void validate_law_axioms(const TruncatedSeries& F, const LawOptions& opts = {});

}  // namespace fgl
