#include <doctest.h>

#include "fgl/landweber.hpp"
#include "helpers.hpp"

using namespace fgl;

namespace {

std::vector<mpz_class> small_primes() { return {2, 3, 5, 7, 11, 13}; }

}  // namespace

TEST_CASE("multiplicative law over Z is exact at every small prime") {
    auto Z = Ring::integers();
    auto mult = FormalGroupLaw::build(LawSpec::multiplicative(), Z, 14);
    LandweberReport rep = landweber_check(mult, small_primes(), 2);
    CHECK(rep.all_exact());
    for (const auto& pr : rep.primes) {
        REQUIRE(pr.steps.size() == 2);
        CHECK(pr.steps[0].regular);
        CHECK_FALSE(pr.steps[0].unit);
        CHECK(pr.steps[1].unit);  // u_1 = 1: the chain collapses
        CHECK(pr.steps[1].u.is_one());
    }
}

TEST_CASE("additive law over Z fails at u_1 for every prime") {
    auto Z = Ring::integers();
    auto add = FormalGroupLaw::build(LawSpec::additive(), Z, 14);
    LandweberReport rep = landweber_check(add, small_primes(), 2);
    CHECK(rep.any_fails());
    for (const auto& pr : rep.primes) {
        CHECK(pr.outcome == LandweberPrimeReport::Outcome::Fails);
        CHECK(pr.fail_n == 1);
        REQUIRE(pr.witness);
        CHECK_FALSE(pr.witness->is_zero());
        // the witness really multiplies to zero
        CHECK((pr.steps.back().u * *pr.witness).is_zero());
    }
}

TEST_CASE("additive law over Q is exact (p becomes a unit)") {
    auto Q = Ring::rationals();
    auto add = FormalGroupLaw::build(LawSpec::additive(), Q, 10);
    LandweberReport rep = landweber_check(add, small_primes(), 2);
    CHECK(rep.all_exact());
    for (const auto& pr : rep.primes) {
        REQUIRE(pr.steps.size() == 1);
        CHECK(pr.steps[0].unit);
    }
}

TEST_CASE("Legendre formal group is exact at p = 3") {
    auto leg_ring = Ring::localization(
        Ring::polynomial(Ring::localization(Ring::integers(), {"2"}), {"l"}), {"l^2-l"});
    LawOptions opts;
    opts.assoc_bound = 6;
    auto F = formal_group(legendre(leg_ring), 11, opts);
    LandweberReport rep = landweber_check(F, {mpz_class(3)}, 2);
    REQUIRE(rep.primes.size() == 1);
    const auto& pr = rep.primes[0];
    CHECK(pr.outcome == LandweberPrimeReport::Outcome::Exact);
    REQUIRE(pr.steps.size() == 3);
    CHECK(pr.steps[0].regular);           // u_0 = 3 on a domain
    CHECK(pr.steps[1].regular);           // u_1 = the Hasse class
    CHECK_FALSE(pr.steps[1].unit);
    CHECK(pr.steps[2].unit);              // u_2 a unit in the supersingular quotient
    // u_1 is a unit multiple of l + 1
    auto R1 = pr.steps[1].ring;
    RingElement u1 = pr.steps[1].u;
    RingElement lp1 = R1->parse("l+1");
    bool proportional = false;
    for (long c = 1; c < 3; ++c)
        if (u1 == lp1 * R1->from_int(c)) proportional = true;
    CHECK(proportional);
}

TEST_CASE("Honda laws fail at their own prime and are exact elsewhere") {
    // u_0 = p = 0 is a zero divisor on a nonzero F_p-algebra
    auto F3 = Ring::prime_field(3);
    auto h31 = FormalGroupLaw::build(LawSpec::honda(3, 1), F3, 8);
    LandweberReport rep = landweber_check(h31, {mpz_class(3), mpz_class(5)}, 2);
    CHECK(rep.primes[0].outcome == LandweberPrimeReport::Outcome::Fails);
    CHECK(rep.primes[0].fail_n == 0);
    // at p = 5 the chain collapses immediately: 5 is a unit in F_3
    CHECK(rep.primes[1].outcome == LandweberPrimeReport::Outcome::Exact);
}

TEST_CASE("bound exhaustion is inconclusive, never exact") {
    auto Z = Ring::integers();
    // bound 14 cannot see x^(5^2); u_1 of the additive law is 0 so the chain
    // cannot collapse and the report must stay inconclusive
    auto pt = FormalGroupLaw::build(LawSpec::additive(), Z, 14);
    LandweberReport rep = landweber_check(pt, {mpz_class(5)}, 0);
    CHECK(rep.primes[0].outcome == LandweberPrimeReport::Outcome::Inconclusive);
    CHECK(rep.primes[0].reason.find("n_max") != std::string::npos);
}

TEST_CASE("exactness survives localization of the base") {
    // multiplicative over Z[1/6]: still exact at 5, 7 and trivially exact at
    // the inverted primes 2, 3
    auto R = Ring::localization(Ring::integers(), {"6"});
    auto mult = FormalGroupLaw::build(LawSpec::multiplicative(), R, 14);
    LandweberReport rep = landweber_check(mult, small_primes(), 2);
    CHECK(rep.all_exact());
}
