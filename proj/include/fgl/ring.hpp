#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fgl/groebner.hpp"
#include "fgl/poly.hpp"

namespace fgl {

// ---------------------------------------------------------------------------
// Descriptors: the user-facing recursive description of a coefficient ring.
// ---------------------------------------------------------------------------

struct RingDescriptor;
using DescPtr = std::shared_ptr<const RingDescriptor>;

struct RingDescriptor {
    enum class Kind { Integers, Rationals, Mod, PrimeField, FiniteField, Poly, Quotient, Localize };

    Kind kind = Kind::Integers;
    mpz_class modulus = 0;             // Mod m, PrimeField p, FiniteField p
    int degree = 0;                    // FiniteField extension degree
    std::vector<long> min_poly;        // ascending coefficients, length degree+1, monic
    DescPtr base;                      // Poly / Quotient / Localize
    std::vector<std::string> vars;     // Poly
    std::vector<std::string> exprs;    // Quotient ideal / Localize inverted elements

    static DescPtr integers();
    static DescPtr rationals();
    static DescPtr mod(const mpz_class& m);
    static DescPtr prime_field(const mpz_class& p);
    static DescPtr finite_field(const mpz_class& p, int degree, std::vector<long> min_poly);
    static DescPtr poly(DescPtr base, std::vector<std::string> vars);
    static DescPtr quotient(DescPtr base, std::vector<std::string> ideal);
    static DescPtr localize(DescPtr base, std::vector<std::string> inverted);

    bool equals(const RingDescriptor& o) const;
    std::string label() const;  // short human-readable form, e.g. "Z/9[u1]/(3,u1)"
};

// ---------------------------------------------------------------------------
// Flattened ring with exact arithmetic and canonical forms.
// ---------------------------------------------------------------------------

// element payload of a ring with localization denominators over Z:
// value = num / prod inverted[j]^den[j]
struct FracElem {
    MPoly num;
    std::vector<std::uint32_t> den;
};

using Scalar = std::variant<BaseScalar, MPoly, FracElem>;

enum class RingRep { Scalar, Poly, Frac };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;
class RingElement;

class Ring : public std::enable_shared_from_this<Ring> {
public:
    static RingPtr make(const DescPtr& desc);

    static RingPtr integers() { return make(RingDescriptor::integers()); }
    static RingPtr rationals() { return make(RingDescriptor::rationals()); }
    static RingPtr integers_mod(const mpz_class& m) { return make(RingDescriptor::mod(m)); }
    static RingPtr prime_field(const mpz_class& p) { return make(RingDescriptor::prime_field(p)); }
    static RingPtr finite_field(const mpz_class& p, int degree, std::vector<long> min_poly) {
        return make(RingDescriptor::finite_field(p, degree, std::move(min_poly)));
    }
    static RingPtr polynomial(const RingPtr& base, std::vector<std::string> vars) {
        return make(RingDescriptor::poly(base->desc_, std::move(vars)));
    }
    static RingPtr quotient(const RingPtr& base, std::vector<std::string> ideal) {
        return make(RingDescriptor::quotient(base->desc_, std::move(ideal)));
    }
    static RingPtr localization(const RingPtr& base, std::vector<std::string> inverted) {
        return make(RingDescriptor::localize(base->desc_, std::move(inverted)));
    }

    const DescPtr& descriptor() const { return desc_; }
    std::string label() const { return desc_->label(); }
    bool same_as(const Ring& o) const { return desc_->equals(*o.desc_); }

    bool is_zero_ring() const { return zero_ring_; }
    bool is_field() const { return field_; }
    bool is_q_algebra() const { return dom_.kind() == ScalarKind::Rationals; }
    bool is_known_domain() const { return known_domain_ && !zero_ring_; }
    mpz_class characteristic() const;
    bool is_finite_field() const { return field_ && dom_.kind() == ScalarKind::Mod; }
    // p and p^d for finite/prime fields
    mpz_class field_char() const { return dom_.modulus(); }
    std::size_t field_size() const;

    const std::vector<std::string>& visible_vars() const { return visible_vars_; }

    RingElement zero() const;
    RingElement one() const;
    RingElement from_int(const mpz_class& n) const;
    RingElement from_int(long n) const;
    RingElement var(const std::string& name) const;
    RingElement parse(const std::string& text) const;

    std::string to_string(const Scalar& v) const;

    // deterministic enumeration of all elements of a finite field (or, for
    // class-A quotients with finite residue basis, all residues); capped
    std::vector<RingElement> enumerate_elements(std::size_t cap = 1u << 20) const;

    // --- payload operations (RingElement forwards here) ---
    Scalar s_zero() const;
    Scalar s_one() const;
    Scalar s_from_mpz(const mpz_class& n) const;
    Scalar s_from_mpq(const mpq_class& q) const;  // needs invertible denominator
    Scalar s_add(const Scalar& a, const Scalar& b) const;
    Scalar s_sub(const Scalar& a, const Scalar& b) const;
    Scalar s_mul(const Scalar& a, const Scalar& b) const;
    Scalar s_neg(const Scalar& a) const;
    bool s_is_zero(const Scalar& a) const;
    bool s_equal(const Scalar& a, const Scalar& b) const;
    std::optional<Scalar> s_inverse(const Scalar& a) const;  // unit witness
    // unique c with (n)*c = a, if it exists
    std::optional<Scalar> s_divide_by_int(const Scalar& a, const mpz_class& n) const;

    struct Regularity {
        bool regular;
        std::optional<Scalar> witness;  // nonzero b with a*b = 0 when not regular
    };
    Regularity s_is_regular(const Scalar& a) const;  // throws unsupported_error outside contract

    // fast path for truncated-series arithmetic: int64 residues mod small m
    bool small_mod_scalars() const {
        return rep_ == RingRep::Scalar && dom_.kind() == ScalarKind::Mod && dom_.small();
    }
    std::int64_t small_modulus() const { return dom_.modulus_i64(); }

    const BaseDomain& base_domain() const { return dom_; }

    // internal presentation access (homs, serialization)
    struct VarInfo {
        enum class Role { User, Gen, Inverse };
        std::string name;
        Role role;
        std::string src_expr;  // Inverse: the inverted element's expression
    };
    const std::vector<VarInfo>& pvars() const { return pvars_; }
    const Packing& packing() const { return pack_; }
    const std::vector<MPoly>& relations() const { return rels_; }
    const std::vector<std::string>& relation_labels() const { return rel_labels_; }
    const std::vector<MPoly>& groebner_basis() const { return gb_; }
    RingRep rep() const { return rep_; }

    MPoly to_raw(const Scalar& v) const;       // payload -> presentation polynomial
    Scalar normalize_raw(const MPoly& raw) const;

private:
    Ring() = default;
    void flatten();
    void classify_b();
    Scalar normalize_b(const MPoly& raw) const;
    void reduce_frac(FracElem& f) const;
    std::optional<Scalar> unit_a(const MPoly& payload) const;
    std::optional<Scalar> unit_b(const Scalar& payload) const;

    DescPtr desc_;
    BaseDomain dom_ = BaseDomain::integers();
    RingRep rep_ = RingRep::Scalar;
    std::vector<VarInfo> pvars_;
    std::vector<std::string> visible_vars_;
    Packing pack_;
    std::vector<MPoly> rels_;
    std::vector<std::string> rel_labels_;  // source expressions, for error reports
    bool zero_ring_ = false;
    bool field_ = false;
    bool known_domain_ = false;

    // class A (field scalars)
    std::vector<MPoly> gb_;
    MonoLess order_;

    // class B (Z or composite Z/m scalars)
    std::vector<std::optional<MPoly>> subs_;
    std::vector<int> frac_vars_;
    std::vector<MPoly> frac_elems_;

    friend class RingHom;
};

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

class RingElement {
public:
    RingElement() = default;
    RingElement(RingPtr ring, Scalar v) : ring_(std::move(ring)), v_(std::move(v)) {}

    const RingPtr& ring() const { return ring_; }
    const Scalar& payload() const { return v_; }

    bool is_zero() const { return ring_->s_is_zero(v_); }
    bool is_one() const { return ring_->s_equal(v_, ring_->s_one()); }
    std::string to_string() const { return ring_->to_string(v_); }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const { return {ring_, ring_->s_neg(v_)}; }
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    RingElement pow(const mpz_class& e) const;  // negative e needs a unit

private:
    void check_same(const RingElement& o) const;
    RingPtr ring_;
    Scalar v_;
};

inline RingElement Ring::from_int(long n) const { return from_int(mpz_class(n)); }

RingElement parse_element(const RingPtr& ring, const std::string& text);

struct UnitResult {
    bool unit;
    std::optional<RingElement> inverse;
};
UnitResult is_unit(const RingElement& a);

struct RegularResult {
    bool regular;
    std::optional<RingElement> witness;  // b != 0 with a*b = 0
};
RegularResult is_regular(const RingElement& a);

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

class RingHom {
public:
    RingHom() = default;
    const RingPtr& source() const { return src_; }
    const RingPtr& target() const { return dst_; }

    RingElement apply(const RingElement& a) const;
    Scalar apply_scalar(const Scalar& a) const;

    // var-name images; every visible source variable must get an image
    static RingHom make(const RingPtr& src, const RingPtr& dst,
                        const std::map<std::string, RingElement>& images);
    // map variables to same-named variables of dst (reduction/projection maps)
    static RingHom canonical(const RingPtr& src, const RingPtr& dst);

private:
    Scalar apply_raw(const MPoly& raw) const;
    RingPtr src_, dst_;
    std::vector<Scalar> images_;  // per source pvar
};

// deterministic irreducible monic polynomial of given degree over F_p
// (ascending coefficients, first in the counting order of coefficient digits)
std::vector<long> first_irreducible_poly(const mpz_class& p, int degree);
bool poly_irreducible_mod_p(const std::vector<mpz_class>& coeffs, const mpz_class& p);

}  // namespace fgl
