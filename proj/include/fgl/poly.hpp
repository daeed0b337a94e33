#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fgl/monomial.hpp"
#include "fgl/scalar.hpp"

namespace fgl {

// Sparse multivariate polynomial over a BaseDomain.  Terms are kept sorted
// ascending by packed key (plain layout) with no zero coefficients; which
// Packing applies is supplied by the caller on every operation.
struct PolyTerm {
    std::uint64_t key;
    BaseScalar c;
};
using MPoly = std::vector<PolyTerm>;

// monomial order: returns true if a < b
using MonoLess = std::function<bool(std::uint64_t, std::uint64_t)>;

MonoLess lex_less();
MonoLess grevlex_less(const Packing& P);
// block order: exponent of var `block_var` first, then grevlex on the rest
MonoLess elim_less(const Packing& P, int block_var);

namespace poly {

MPoly zero();
MPoly constant(const BaseDomain& dom, const BaseScalar& c);
MPoly variable(const BaseDomain& dom, const Packing& P, int var, std::uint32_t e = 1);

bool is_zero(const MPoly& f);
bool is_constant(const MPoly& f);
// constant coefficient (term with key 0), or domain zero
BaseScalar constant_coeff(const BaseDomain& dom, const MPoly& f);

void normalize(const BaseDomain& dom, MPoly& f);  // sort keys, merge, drop zeros

MPoly add(const BaseDomain& dom, const MPoly& a, const MPoly& b);
MPoly sub(const BaseDomain& dom, const MPoly& a, const MPoly& b);
MPoly neg(const BaseDomain& dom, const MPoly& a);
MPoly mul(const BaseDomain& dom, const Packing& P, const MPoly& a, const MPoly& b);
MPoly scalar_mul(const BaseDomain& dom, const MPoly& a, const BaseScalar& c);
MPoly mono_mul(const BaseDomain& dom, const Packing& P, const MPoly& a, std::uint64_t key,
               const BaseScalar& c);
MPoly pow(const BaseDomain& dom, const Packing& P, const MPoly& a, std::uint32_t e);

bool equal(const BaseDomain& dom, const MPoly& a, const MPoly& b);

std::uint32_t total_degree(const Packing& P, const MPoly& f);  // 0 for the zero poly
std::uint32_t degree_in(const Packing& P, const MPoly& f, int var);
bool uses_var(const Packing& P, const MPoly& f, int var);

// coefficient of var^e viewed as polynomial in `var` (other vars kept)
MPoly coeff_of_var_power(const BaseDomain& dom, const Packing& P, const MPoly& f, int var,
                         std::uint32_t e);

// leading term with respect to an order
const PolyTerm& leading_term(const MPoly& f, const MonoLess& less);

// substitute images[i] for variable i (nullptr = keep variable i)
MPoly substitute(const BaseDomain& dom, const Packing& P, const MPoly& f,
                 const std::vector<const MPoly*>& images);

// exact division a / b; nullopt if not exact (valid over Z and fields)
std::optional<MPoly> divide_exact(const BaseDomain& dom, const Packing& P, const MPoly& a,
                                  const MPoly& b);

// map coefficients through another domain (e.g. Z -> Z/m, Q -> Z/m via inversion)
MPoly map_coeffs(const BaseDomain& src, const BaseDomain& dst, const MPoly& f);

// integer content of an integer-coefficient polynomial (0 for zero poly)
mpz_class int_content(const BaseDomain& dom, const MPoly& f);

}  // namespace poly
}  // namespace fgl
