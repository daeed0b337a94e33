#include "fgl/landweber.hpp"

namespace fgl {

namespace {

LandweberPrimeReport check_one_prime(const FormalGroupLaw& F, const mpz_class& p, int n_max) {
    LandweberPrimeReport rep;
    rep.prime = p;

    LawOptions chain_opts;
    chain_opts.assoc_bound = std::min(F.bound(), 6);

    RingPtr R = F.ring();
    FormalGroupLaw law = F;
    RingElement u = R->from_int(p);

    for (int n = 0; n <= n_max; ++n) {
        LandweberStep step{n, u, R, false, false};
        auto unit = is_unit(u);
        if (unit.unit) {
            step.unit = true;
            step.regular = true;
            rep.steps.push_back(std::move(step));
            rep.outcome = LandweberPrimeReport::Outcome::Exact;
            return rep;
        }
        RegularResult reg;
        try {
            reg = is_regular(u);
        } catch (const unsupported_error& e) {
            rep.steps.push_back(std::move(step));
            rep.outcome = LandweberPrimeReport::Outcome::Inconclusive;
            rep.reason = std::string("regularity undecidable at step ") + std::to_string(n) +
                         ": " + e.what();
            return rep;
        }
        step.regular = reg.regular;
        rep.steps.push_back(step);
        if (!reg.regular) {
            // re-check the witness before reporting
            if (!reg.witness || reg.witness->is_zero() || !(u * *reg.witness).is_zero())
                throw internal_error("invalid zero-divisor witness");
            rep.outcome = LandweberPrimeReport::Outcome::Fails;
            rep.fail_n = n;
            rep.witness = reg.witness;
            return rep;
        }
        if (n == n_max) break;

        // next quotient and the next u
        mpz_class pn1;
        mpz_pow_ui(pn1.get_mpz_t(), p.get_mpz_t(), n + 1);
        if (pn1 > F.bound()) {
            rep.outcome = LandweberPrimeReport::Outcome::Inconclusive;
            rep.reason = "truncation bound " + std::to_string(F.bound()) +
                         " too small for x^(p^" + std::to_string(n + 1) + "); need N >= " +
                         pn1.get_str();
            return rep;
        }
        try {
            if (!u.is_zero()) {
                RingPtr Rq = Ring::quotient(R, {u.to_string()});
                if (Rq->is_zero_ring())
                    throw internal_error("quotient by a regular non-unit collapsed");
                RingHom h = RingHom::canonical(R, Rq);
                law = law.base_change(h, chain_opts);
                R = Rq;
            }
        } catch (const unsupported_error& e) {
            rep.outcome = LandweberPrimeReport::Outcome::Inconclusive;
            rep.reason = std::string("quotient at step ") + std::to_string(n + 1) +
                         " outside the supported ring class: " + e.what();
            return rep;
        }
        TruncatedSeries ps = law.p_series(p);
        if (!ps.is_zero() &&
            mpz_class(ps.packing().degree(ps.terms().front().key)) < pn1)
            throw internal_error("p-series has unexpected low-order terms modulo the chain ideal");
        u = ps.coefficient_x(static_cast<std::uint32_t>(pn1.get_ui()));
    }

    rep.outcome = LandweberPrimeReport::Outcome::Inconclusive;
    rep.reason = "chain did not collapse within n_max = " + std::to_string(n_max) +
                 "; exactness not certified";
    return rep;
}

}  // namespace

LandweberReport landweber_check(const FormalGroupLaw& F, const std::vector<mpz_class>& primes,
                                int n_max) {
    if (n_max < 0) throw math_error("n_max must be >= 0");
    LandweberReport rep;
    for (const auto& p : primes) {
        if (!mpz_is_prime(p)) throw math_error(p.get_str() + " is not prime");
        rep.primes.push_back(check_one_prime(F, p, n_max));
    }
    return rep;
}

}  // namespace fgl
