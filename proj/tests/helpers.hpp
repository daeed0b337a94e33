#pragma once

#include <random>
#include <string>
#include <vector>

#include "fgl/weierstrass.hpp"

namespace fgl::testing {

// random element as a small expression in the ring's visible variables
inline RingElement random_element(const RingPtr& R, std::mt19937& rng, int max_terms = 3) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> expd(0, 2);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    const auto& vars = R->visible_vars();
    RingElement acc = R->zero();
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        RingElement term = R->from_int(coeff(rng));
        for (const auto& v : vars) {
            int e = expd(rng);
            if (e > 0) term = term * R->var(v).pow(e);
        }
        acc = acc + term;
    }
    return acc;
}

// univariate series with random small integer coefficients, linear term 1
inline TruncatedSeries random_log(const RingPtr& Q, std::mt19937& rng, int bound) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<TruncatedSeries::Term> terms;
    Packing P = Packing::graded(1);
    terms.push_back({P.var_key(0, 1), Q->one().payload()});
    for (int d = 2; d <= bound; ++d) {
        int c = coeff(rng);
        if (c == 0) continue;
        terms.push_back({P.var_key(0, static_cast<std::uint32_t>(d)),
                         Q->from_int(c).payload()});
    }
    return TruncatedSeries::from_terms(Q, {"x"}, bound, std::move(terms));
}

// exhaustive affine point count plus the point at infinity
inline long count_points(long p, long a1, long a2, long a3, long a4, long a6) {
    auto md = [p](long v) { return ((v % p) + p) % p; };
    long cnt = 1;
    for (long x = 0; x < p; ++x) {
        long rhs = md(md(md(x * x) * x) + md(a2 * x * x) + md(a4 * x) + a6);
        for (long y = 0; y < p; ++y) {
            long lhs = md(md(y * y) + md(a1 * x * y) + md(a3 * y));
            if (lhs == rhs) ++cnt;
        }
    }
    return cnt;
}

inline bool supersingular_by_point_count(long p, long a1, long a2, long a3, long a4, long a6) {
    long n = count_points(p, a1, a2, a3, a4, a6);
    return (n % p) == ((p + 1) % p);
}

}  // namespace fgl::testing
