#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "fgl/errors.hpp"

namespace fgl {

// Coefficient payload of the scalar base domain of a ring.  Residues of a
// small modulus live in the int64 alternative; everything else is exact GMP.
using BaseScalar = std::variant<std::int64_t, mpz_class, mpq_class>;

enum class ScalarKind { Integers, Rationals, Mod };

// The scalar domain a ring's polynomial machinery works over: the integers,
// the rationals, or Z/m.  A modulus below 2^31 uses int64 residues so that
// products stay inside int64.
class BaseDomain {
public:
    static BaseDomain integers() { return BaseDomain(ScalarKind::Integers); }
    static BaseDomain rationals() { return BaseDomain(ScalarKind::Rationals); }
    static BaseDomain mod(const mpz_class& m);

    ScalarKind kind() const { return kind_; }
    bool is_field() const { return field_; }
    bool is_zero_ring() const { return kind_ == ScalarKind::Mod && modulus_ == 1; }
    bool small() const { return small_; }
    const mpz_class& modulus() const { return modulus_; }
    std::int64_t modulus_i64() const { return m64_; }

    BaseScalar zero() const;
    BaseScalar one() const;
    BaseScalar from_mpz(const mpz_class& n) const;
    BaseScalar from_int(long n) const { return from_mpz(mpz_class(n)); }
    BaseScalar from_mpq(const mpq_class& q) const;  // divides; throws if denominator not invertible

    BaseScalar add(const BaseScalar& a, const BaseScalar& b) const;
    BaseScalar sub(const BaseScalar& a, const BaseScalar& b) const;
    BaseScalar mul(const BaseScalar& a, const BaseScalar& b) const;
    BaseScalar neg(const BaseScalar& a) const;

    bool is_zero(const BaseScalar& a) const;
    bool is_one(const BaseScalar& a) const;
    bool equal(const BaseScalar& a, const BaseScalar& b) const;

    // multiplicative inverse when it exists
    std::optional<BaseScalar> inverse(const BaseScalar& a) const;
    bool is_unit(const BaseScalar& a) const { return inverse(a).has_value(); }
    // field inverse; throws if not invertible
    BaseScalar inv(const BaseScalar& a) const;
    // a / b when exact/unique, nullopt otherwise
    std::optional<BaseScalar> divide_exact(const BaseScalar& a, const BaseScalar& b) const;

    // multiplication by a is injective on the scalar ring
    bool is_regular(const BaseScalar& a) const;

    mpz_class lift(const BaseScalar& a) const;  // integer representative (Int/Mod)
    std::string to_string(const BaseScalar& a) const;

    bool operator==(const BaseDomain& o) const {
        return kind_ == o.kind_ && modulus_ == o.modulus_;
    }

private:
    explicit BaseDomain(ScalarKind k) : kind_(k), field_(k == ScalarKind::Rationals) {}

    std::int64_t norm64(std::int64_t v) const {
        v %= m64_;
        return v < 0 ? v + m64_ : v;
    }

    ScalarKind kind_ = ScalarKind::Integers;
    bool field_ = false;
    bool small_ = false;
    mpz_class modulus_ = 0;
    std::int64_t m64_ = 0;
};

bool mpz_is_prime(const mpz_class& n);  // deterministic, trial division (desk scale)

}  // namespace fgl
