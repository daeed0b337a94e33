#include "fgl/scalar.hpp"

namespace fgl {

bool mpz_is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    mpz_class d = 3;
    while (d * d <= n) {
        if (n % d == 0) return false;
        d += 2;
    }
    return true;
}

BaseDomain BaseDomain::mod(const mpz_class& m) {
    if (m < 1) throw math_error("modulus must be >= 1");
    BaseDomain d(ScalarKind::Mod);
    d.modulus_ = m;
    d.small_ = m.fits_sint_p() && m.get_si() < (std::int64_t(1) << 31);
    if (d.small_) d.m64_ = m.get_si();
    d.field_ = mpz_is_prime(m);
    return d;
}

BaseScalar BaseDomain::zero() const {
    switch (kind_) {
        case ScalarKind::Integers: return mpz_class(0);
        case ScalarKind::Rationals: return mpq_class(0);
        case ScalarKind::Mod: return small_ ? BaseScalar(std::int64_t(0)) : BaseScalar(mpz_class(0));
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::one() const {
    if (is_zero_ring()) return zero();
    switch (kind_) {
        case ScalarKind::Integers: return mpz_class(1);
        case ScalarKind::Rationals: return mpq_class(1);
        case ScalarKind::Mod: return small_ ? BaseScalar(std::int64_t(1)) : BaseScalar(mpz_class(1));
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::from_mpz(const mpz_class& n) const {
    switch (kind_) {
        case ScalarKind::Integers: return n;
        case ScalarKind::Rationals: return mpq_class(n);
        case ScalarKind::Mod: {
            mpz_class r = n % modulus_;
            if (r < 0) r += modulus_;
            if (small_) return std::int64_t(r.get_si());
            return r;
        }
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::from_mpq(const mpq_class& q) const {
    if (kind_ == ScalarKind::Rationals) return q;
    BaseScalar num = from_mpz(mpz_class(q.get_num()));
    BaseScalar den = from_mpz(mpz_class(q.get_den()));
    auto inv_den = inverse(den);
    if (!inv_den) throw math_error("denominator " + q.get_den().get_str() + " is not invertible");
    return mul(num, *inv_den);
}

BaseScalar BaseDomain::add(const BaseScalar& a, const BaseScalar& b) const {
    switch (kind_) {
        case ScalarKind::Integers: return mpz_class(std::get<mpz_class>(a) + std::get<mpz_class>(b));
        case ScalarKind::Rationals: return mpq_class(std::get<mpq_class>(a) + std::get<mpq_class>(b));
        case ScalarKind::Mod:
            if (small_) {
                std::int64_t s = std::get<std::int64_t>(a) + std::get<std::int64_t>(b);
                if (s >= m64_) s -= m64_;
                return s;
            } else {
                mpz_class s = std::get<mpz_class>(a) + std::get<mpz_class>(b);
                if (s >= modulus_) s -= modulus_;
                return s;
            }
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::sub(const BaseScalar& a, const BaseScalar& b) const {
    switch (kind_) {
        case ScalarKind::Integers: return mpz_class(std::get<mpz_class>(a) - std::get<mpz_class>(b));
        case ScalarKind::Rationals: return mpq_class(std::get<mpq_class>(a) - std::get<mpq_class>(b));
        case ScalarKind::Mod:
            if (small_) {
                std::int64_t s = std::get<std::int64_t>(a) - std::get<std::int64_t>(b);
                if (s < 0) s += m64_;
                return s;
            } else {
                mpz_class s = std::get<mpz_class>(a) - std::get<mpz_class>(b);
                if (s < 0) s += modulus_;
                return s;
            }
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::mul(const BaseScalar& a, const BaseScalar& b) const {
    switch (kind_) {
        case ScalarKind::Integers: return mpz_class(std::get<mpz_class>(a) * std::get<mpz_class>(b));
        case ScalarKind::Rationals: return mpq_class(std::get<mpq_class>(a) * std::get<mpq_class>(b));
        case ScalarKind::Mod:
            if (small_)
                return (std::get<std::int64_t>(a) * std::get<std::int64_t>(b)) % m64_;
            else
                return mpz_class(std::get<mpz_class>(a) * std::get<mpz_class>(b) % modulus_);
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::neg(const BaseScalar& a) const {
    switch (kind_) {
        case ScalarKind::Integers: return mpz_class(-std::get<mpz_class>(a));
        case ScalarKind::Rationals: return mpq_class(-std::get<mpq_class>(a));
        case ScalarKind::Mod:
            if (small_) {
                std::int64_t v = std::get<std::int64_t>(a);
                return v == 0 ? 0 : m64_ - v;
            } else {
                const mpz_class& v = std::get<mpz_class>(a);
                return v == 0 ? mpz_class(0) : mpz_class(modulus_ - v);
            }
    }
    throw internal_error("bad scalar kind");
}

bool BaseDomain::is_zero(const BaseScalar& a) const {
    switch (kind_) {
        case ScalarKind::Integers: return std::get<mpz_class>(a) == 0;
        case ScalarKind::Rationals: return std::get<mpq_class>(a) == 0;
        case ScalarKind::Mod:
            return small_ ? std::get<std::int64_t>(a) == 0 : std::get<mpz_class>(a) == 0;
    }
    throw internal_error("bad scalar kind");
}

bool BaseDomain::is_one(const BaseScalar& a) const {
    if (is_zero_ring()) return is_zero(a);
    switch (kind_) {
        case ScalarKind::Integers: return std::get<mpz_class>(a) == 1;
        case ScalarKind::Rationals: return std::get<mpq_class>(a) == 1;
        case ScalarKind::Mod:
            return small_ ? std::get<std::int64_t>(a) == 1 : std::get<mpz_class>(a) == 1;
    }
    throw internal_error("bad scalar kind");
}

bool BaseDomain::equal(const BaseScalar& a, const BaseScalar& b) const {
    switch (kind_) {
        case ScalarKind::Integers: return std::get<mpz_class>(a) == std::get<mpz_class>(b);
        case ScalarKind::Rationals: return std::get<mpq_class>(a) == std::get<mpq_class>(b);
        case ScalarKind::Mod:
            return small_ ? std::get<std::int64_t>(a) == std::get<std::int64_t>(b)
                          : std::get<mpz_class>(a) == std::get<mpz_class>(b);
    }
    throw internal_error("bad scalar kind");
}

std::optional<BaseScalar> BaseDomain::inverse(const BaseScalar& a) const {
    switch (kind_) {
        case ScalarKind::Integers: {
            const mpz_class& v = std::get<mpz_class>(a);
            if (v == 1 || v == -1) return BaseScalar(v);
            return std::nullopt;
        }
        case ScalarKind::Rationals: {
            const mpq_class& v = std::get<mpq_class>(a);
            if (v == 0) return std::nullopt;
            return BaseScalar(mpq_class(1 / v));
        }
        case ScalarKind::Mod: {
            if (is_zero_ring()) return std::nullopt;
            mpz_class v = lift(a);
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v.get_mpz_t(),
                       modulus_.get_mpz_t());
            if (g != 1) return std::nullopt;
            return from_mpz(s);
        }
    }
    throw internal_error("bad scalar kind");
}

BaseScalar BaseDomain::inv(const BaseScalar& a) const {
    auto r = inverse(a);
    if (!r) throw math_error("scalar " + to_string(a) + " is not invertible");
    return *r;
}

std::optional<BaseScalar> BaseDomain::divide_exact(const BaseScalar& a, const BaseScalar& b) const {
    if (auto ib = inverse(b)) return mul(a, *ib);
    switch (kind_) {
        case ScalarKind::Integers: {
            const mpz_class& x = std::get<mpz_class>(a);
            const mpz_class& y = std::get<mpz_class>(b);
            if (y == 0) return std::nullopt;
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            if (r != 0) return std::nullopt;
            return BaseScalar(q);
        }
        case ScalarKind::Rationals:
            return std::nullopt;  // b == 0
        case ScalarKind::Mod: {
            // unique solution of b*x = a requires gcd(b, m) | a with a unique residue,
            // i.e. gcd(b, m) = 1; that case was handled above.
            return std::nullopt;
        }
    }
    return std::nullopt;
}

bool BaseDomain::is_regular(const BaseScalar& a) const {
    switch (kind_) {
        case ScalarKind::Integers: return std::get<mpz_class>(a) != 0;
        case ScalarKind::Rationals: return std::get<mpq_class>(a) != 0;
        case ScalarKind::Mod: {
            if (is_zero_ring()) return true;  // everything acts injectively on 0
            mpz_class g;
            mpz_class v = lift(a);
            mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
            return g == 1;
        }
    }
    throw internal_error("bad scalar kind");
}

mpz_class BaseDomain::lift(const BaseScalar& a) const {
    switch (kind_) {
        case ScalarKind::Integers: return std::get<mpz_class>(a);
        case ScalarKind::Rationals: {
            const mpq_class& q = std::get<mpq_class>(a);
            if (q.get_den() != 1) throw math_error("rational " + q.get_str() + " is not an integer");
            return q.get_num();
        }
        case ScalarKind::Mod:
            return small_ ? mpz_class(static_cast<long>(std::get<std::int64_t>(a)))
                          : std::get<mpz_class>(a);
    }
    throw internal_error("bad scalar kind");
}

std::string BaseDomain::to_string(const BaseScalar& a) const {
    switch (kind_) {
        case ScalarKind::Integers: return std::get<mpz_class>(a).get_str();
        case ScalarKind::Rationals: return std::get<mpq_class>(a).get_str();
        case ScalarKind::Mod: return lift(a).get_str();
    }
    throw internal_error("bad scalar kind");
}

}  // namespace fgl
