#include <doctest.h>

#include "helpers.hpp"

using namespace fgl;

namespace {

TruncatedSeries var(const RingPtr& R, std::vector<std::string> vars, int N,
                    const std::string& name) {
    return TruncatedSeries::variable(R, std::move(vars), N, name);
}

// geometric-style series sum_{n=1}^{N} c_n x^n from integer coefficients
TruncatedSeries from_coeffs(const RingPtr& R, int N, const std::vector<long>& coeffs) {
    std::vector<TruncatedSeries::Term> terms;
    Packing P = Packing::graded(1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        terms.push_back({P.var_key(0, static_cast<std::uint32_t>(i)),
                         R->from_int(coeffs[i]).payload()});
    }
    return TruncatedSeries::from_terms(R, {"x"}, N, std::move(terms));
}

}  // namespace

TEST_CASE("series arithmetic examples") {
    auto Z = Ring::integers();
    auto x = var(Z, {"x", "y"}, 4, "x");
    auto y = var(Z, {"x", "y"}, 4, "y");
    TruncatedSeries prod = (x + y) * (x - y);
    CHECK(prod.coefficient({2, 0}).to_string() == "1");
    CHECK(prod.coefficient({0, 2}).to_string() == "-1");
    CHECK(prod.coefficient({1, 1}).is_zero());

    auto F2 = Ring::prime_field(2);
    auto x2 = var(F2, {"x", "y"}, 4, "x");
    auto y2 = var(F2, {"x", "y"}, 4, "y");
    TruncatedSeries sq = (x2 + y2) * (x2 + y2);
    CHECK(sq.coefficient({1, 1}).is_zero());
    CHECK(sq.coefficient({2, 0}).is_one());

    // (1+x)(1-x+x^2-x^3) = 1 at N=3
    auto one = TruncatedSeries::constant(Z, {"x"}, 3, Z->one());
    auto xz = var(Z, {"x"}, 3, "x");
    CHECK(equal_to_bound((one + xz) * (one - xz + xz * xz - xz * xz * xz), one));

    // mismatches
    auto w = var(Z, {"w"}, 4, "w");
    CHECK_THROWS_AS((void)(xz + w), math_error);
    auto xq = var(Ring::rationals(), {"x"}, 4, "x");
    CHECK_THROWS_AS((void)(xz + xq), math_error);

    // bound bookkeeping: min of operand bounds
    CHECK((xz.truncated(2) * xz).bound() == 2);
}

TEST_CASE("substitution examples") {
    auto Z = Ring::integers();
    auto xz = var(Z, {"x"}, 3, "x");
    // f = x^2, x -> x + y
    auto img = var(Z, {"x", "y"}, 3, "x") + var(Z, {"x", "y"}, 3, "y");
    TruncatedSeries s = substitute(xz * xz, {{"x", img}});
    CHECK(s.coefficient({2, 0}).is_one());
    CHECK(s.coefficient({1, 1}).to_string() == "2");
    CHECK(s.coefficient({0, 2}).is_one());

    // identity
    CHECK(equal_to_bound(substitute(xz, {{"x", xz}}), xz));

    // f = sum x^n, x -> x + x^2 at N=3 gives x + 2x^2 + 3x^3
    auto f = from_coeffs(Z, 3, {0, 1, 1, 1});
    auto gsub = substitute(f, {{"x", xz + xz * xz}});
    CHECK(equal_to_bound(gsub, from_coeffs(Z, 3, {0, 1, 2, 3})));

    // image with nonzero constant term is rejected
    auto bad = TruncatedSeries::constant(Z, {"x"}, 3, Z->one()) + xz;
    CHECK_THROWS_AS(substitute(f, {{"x", bad}}), math_error);
}

TEST_CASE("substitution composition is associative") {
    auto Q = Ring::rationals();
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        TruncatedSeries f = testing::random_log(Q, rng, 8);
        TruncatedSeries g = testing::random_log(Q, rng, 8);
        TruncatedSeries h = testing::random_log(Q, rng, 8);
        TruncatedSeries lhs = substitute(substitute(f, {{"x", g}}), {{"x", h}});
        TruncatedSeries rhs = substitute(f, {{"x", substitute(g, {{"x", h}})}});
        CHECK(equal_to_bound(lhs, rhs));
    }
}

TEST_CASE("reversion examples and roundtrip") {
    auto Q = Ring::rationals();
    auto x = var(Q, {"x"}, 5, "x");
    TruncatedSeries g = reversion(x + x * x);
    CHECK(equal_to_bound(g, from_coeffs(Q, 5, {0, 1, -1, 2, -5, 14})));
    CHECK(equal_to_bound(substitute(x + x * x, {{"x", g}}), x));

    CHECK(equal_to_bound(reversion(x), x));

    // f = 2x over F_3 is its own inverse
    auto F3 = Ring::prime_field(3);
    auto x3 = var(F3, {"x"}, 4, "x");
    TruncatedSeries two_x = x3.scaled(F3->from_int(2));
    CHECK(equal_to_bound(reversion(two_x), two_x));

    // non-unit linear coefficient
    auto Z = Ring::integers();
    auto xz = var(Z, {"x"}, 4, "x");
    CHECK_THROWS_WITH_AS(reversion(xz.scaled(Z->from_int(2))),
                         doctest::Contains("is_unit failed"), math_error);

    std::mt19937 rng(17);
    for (int i = 0; i < 10; ++i) {
        TruncatedSeries f = testing::random_log(Q, rng, 10);
        TruncatedSeries r = reversion(f);
        CHECK(equal_to_bound(substitute(f, {{"x", r}}), var(Q, {"x"}, 10, "x")));
        CHECK(equal_to_bound(substitute(r, {{"x", f}}), var(Q, {"x"}, 10, "x")));
    }
}

TEST_CASE("derivative examples and product rule") {
    auto Z = Ring::integers();
    auto x = var(Z, {"x", "y"}, 6, "x");
    auto y = var(Z, {"x", "y"}, 6, "y");
    TruncatedSeries F = x + y + x * y;
    TruncatedSeries Fy = partial_derivative(F, "y");
    CHECK(Fy.coefficient({0, 0}).is_one());
    CHECK(Fy.coefficient({1, 0}).is_one());
    CHECK(partial_derivative(y * y * y, "x").is_zero());
    TruncatedSeries x3y = x * x * x * y;
    TruncatedSeries d = partial_derivative(x3y, "x");
    CHECK(d.coefficient({2, 1}).to_string() == "3");

    std::mt19937 rng(23);
    auto Q = Ring::rationals();
    for (int i = 0; i < 10; ++i) {
        TruncatedSeries f = testing::random_log(Q, rng, 9);
        TruncatedSeries g = testing::random_log(Q, rng, 9);
        TruncatedSeries lhs = partial_derivative(f * g, "x");
        TruncatedSeries rhs = partial_derivative(f, "x") * g + f * partial_derivative(g, "x");
        CHECK(equal_to_bound(lhs, rhs));
    }
}

TEST_CASE("integral examples and inverse relationship") {
    auto Q = Ring::rationals();
    auto one = TruncatedSeries::constant(Q, {"x"}, 4, Q->one());
    CHECK(equal_to_bound(formal_integral(one), var(Q, {"x"}, 5, "x")));

    auto x = var(Q, {"x"}, 2, "x");
    TruncatedSeries F = formal_integral(one.truncated(2) - x + x * x);
    CHECK(F.coefficient({1}).is_one());
    CHECK(F.coefficient({2}) == Q->parse("-1*2^(-1)"));
    CHECK(F.coefficient({3}) == Q->parse("3^(-1)"));

    auto Z = Ring::integers();
    CHECK_THROWS_WITH_AS(formal_integral(var(Z, {"x"}, 2, "x")),
                         doctest::Contains("degree 2"), math_error);

    std::mt19937 rng(29);
    for (int i = 0; i < 10; ++i) {
        TruncatedSeries f = testing::random_log(Q, rng, 9);
        CHECK(equal_to_bound(partial_derivative(formal_integral(f), "x"), f));
    }
}

TEST_CASE("coefficient and leading p-power analysis") {
    auto F3 = Ring::prime_field(3);
    // 3x^9 + x^27 over F_3: the 3x^9 term collapses
    auto f = from_coeffs(F3, 30, std::vector<long>(31, 0));
    {
        std::vector<long> c(31, 0);
        c[9] = 3;
        c[27] = 1;
        f = from_coeffs(F3, 30, c);
    }
    PPowerLead lead = leading_term_in_p_powers(f, 3);
    CHECK_FALSE(lead.zero_to_bound);
    CHECK(lead.n == 3);
    CHECK(lead.coeff.is_one());

    auto F2 = Ring::prime_field(2);
    PPowerLead l2 = leading_term_in_p_powers(from_coeffs(F2, 4, {0, 0, 1}), 2);
    CHECK(l2.n == 1);
    CHECK(l2.coeff.is_one());

    PPowerLead lz = leading_term_in_p_powers(TruncatedSeries::zero(F3, {"x"}, 30), 3);
    CHECK(lz.zero_to_bound);

    // malformed: nonzero coefficient at a non-p-power degree below the lead
    CHECK_THROWS_AS(leading_term_in_p_powers(from_coeffs(F3, 10, {0, 0, 1}), 3),
                    internal_error);

    CHECK_THROWS_AS(f.coefficient({40}), math_error);  // beyond the bound
}

TEST_CASE("series division by a unit") {
    auto Z = Ring::integers();
    auto one = TruncatedSeries::constant(Z, {"x"}, 6, Z->one());
    auto x = var(Z, {"x"}, 6, "x");
    TruncatedSeries inv = div_unit(one, one + x);
    CHECK(equal_to_bound(inv * (one + x), one));
    CHECK_THROWS_AS(div_unit(one, x), math_error);

    // bivariate
    auto xb = var(Z, {"x", "y"}, 6, "x");
    auto yb = var(Z, {"x", "y"}, 6, "y");
    auto oneb = TruncatedSeries::constant(Z, {"x", "y"}, 6, Z->one());
    TruncatedSeries q = div_unit(xb + yb, oneb + xb * yb);
    CHECK(equal_to_bound(q * (oneb + xb * yb), xb + yb));
}

TEST_CASE("series over polynomial coefficient rings") {
    auto Ql = Ring::polynomial(Ring::rationals(), {"t"});
    auto x = var(Ql, {"x"}, 5, "x");
    TruncatedSeries f = x.scaled(Ql->var("t")) + x * x;
    TruncatedSeries g = f * f;
    CHECK(g.coefficient({2}) == Ql->parse("t^2"));
    CHECK(g.coefficient({3}) == Ql->parse("2*t"));
}
