#pragma once

#include <map>
#include <string>
#include <vector>

#include "fgl/ring.hpp"

namespace fgl {

// A k-variate power series over a coefficient ring, truncated at a total
// degree bound (inclusive).  Terms are kept sorted ascending in graded-lex
// order with no zero coefficients.
class TruncatedSeries {
public:
    struct Term {
        std::uint64_t key;
        Scalar c;
    };

    TruncatedSeries() = default;

    static TruncatedSeries zero(RingPtr ring, std::vector<std::string> vars, int bound);
    static TruncatedSeries constant(RingPtr ring, std::vector<std::string> vars, int bound,
                                    const RingElement& c);
    static TruncatedSeries variable(RingPtr ring, std::vector<std::string> vars, int bound,
                                    const std::string& name);

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int bound() const { return bound_; }
    const Packing& packing() const { return pack_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int var_index(const std::string& name) const;

    RingElement coefficient(const std::vector<std::uint32_t>& exps) const;
    // univariate convenience
    RingElement coefficient_x(std::uint32_t e) const { return coefficient({e}); }

    TruncatedSeries truncated(int new_bound) const;
    // inject into a larger variable list (by name), optionally changing bound
    TruncatedSeries embedded(std::vector<std::string> new_vars, int new_bound = -1) const;

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const RingElement& c) const;
    TruncatedSeries scaled_scalar(const Scalar& c) const;
    // multiply by c * x^exps
    TruncatedSeries mono_mul(const std::vector<std::uint32_t>& exps, const Scalar& c) const;

    // terms with key -> new sorted unique storage (internal-ish helper)
    static TruncatedSeries from_terms(RingPtr ring, std::vector<std::string> vars, int bound,
                                      std::vector<Term> terms);

private:
    void check_compatible(const TruncatedSeries& o) const;

    RingPtr ring_;
    std::vector<std::string> vars_;
    int bound_ = 0;
    Packing pack_;
    std::vector<Term> terms_;
};

// f and g agree as series up to the smaller of the two bounds
bool equal_to_bound(const TruncatedSeries& a, const TruncatedSeries& b);

// composition: every variable of f gets an explicit image, or falls through
// by name to the image variable list; images need zero constant term
TruncatedSeries substitute(const TruncatedSeries& f,
                           const std::map<std::string, TruncatedSeries>& images);

// compositional inverse of a univariate series with f(0)=0 and unit f'(0)
TruncatedSeries reversion(const TruncatedSeries& f);

TruncatedSeries partial_derivative(const TruncatedSeries& f, const std::string& var);

// univariate antiderivative with F(0)=0; needs exact division by each n+1
TruncatedSeries formal_integral(const TruncatedSeries& f);

// num / den for den with unit constant term (degreewise forward solve)
TruncatedSeries div_unit(const TruncatedSeries& num, const TruncatedSeries& den);

// coefficient-wise image under a ring homomorphism
TruncatedSeries series_base_change(const TruncatedSeries& f, const RingHom& h);

struct PPowerLead {
    bool zero_to_bound;  // the series vanishes up to the truncation bound
    int n;               // leading exponent: coefficient sits at x^(p^n)
    RingElement coeff;
};

// smallest n with a nonzero coefficient at x^(p^n); all lower degrees must
// vanish and the leading degree must be a p-power
PPowerLead leading_term_in_p_powers(const TruncatedSeries& f, const mpz_class& p);

}  // namespace fgl
