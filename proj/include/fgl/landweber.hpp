#pragma once

#include "fgl/invariants.hpp"

namespace fgl {

struct LandweberStep {
    int n;
    RingElement u;
    RingPtr ring;  // quotient in which u was read and tested
    bool regular = false;
    bool unit = false;
};

struct LandweberPrimeReport {
    enum class Outcome { Exact, Fails, Inconclusive };

    mpz_class prime;
    std::vector<LandweberStep> steps;
    Outcome outcome = Outcome::Inconclusive;
    int fail_n = -1;                      // Fails
    std::optional<RingElement> witness;   // Fails: b != 0 with u_n * b = 0
    std::string reason;                   // Inconclusive
};

struct LandweberReport {
    std::vector<LandweberPrimeReport> primes;

    bool all_exact() const {
        for (const auto& r : primes)
            if (r.outcome != LandweberPrimeReport::Outcome::Exact) return false;
        return true;
    }
    bool any_fails() const {
        for (const auto& r : primes)
            if (r.outcome == LandweberPrimeReport::Outcome::Fails) return true;
        return false;
    }
};

// For each prime: u_0 = p and recursively u_n = leading coefficient of the
// p-series modulo (p, u_1, ..., u_{n-1}); exactness at p requires each u_n to
// act injectively until some u_n is a unit and the chain collapses.  Limits
// (ring class, truncation, n_max) surface as Inconclusive, never as Exact.
LandweberReport landweber_check(const FormalGroupLaw& F, const std::vector<mpz_class>& primes,
                                int n_max);

}  // namespace fgl
