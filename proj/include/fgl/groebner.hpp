#pragma once

#include <vector>

#include "fgl/poly.hpp"

namespace fgl {
namespace groebner {

// All routines require a field BaseDomain.

// full reduction of f modulo basis (multivariate division remainder)
MPoly normal_form(const BaseDomain& dom, const Packing& P, const MPoly& f,
                  const std::vector<MPoly>& basis, const MonoLess& less);

// reduced Groebner basis (monic generators, fully inter-reduced)
std::vector<MPoly> reduced_basis(const BaseDomain& dom, const Packing& P,
                                 std::vector<MPoly> gens, const MonoLess& less);

bool contains_one(const std::vector<MPoly>& gb);

// residue monomials below the staircase, up to total degree `maxdeg`;
// `complete` is set when the quotient is finite-dimensional and fully listed
std::vector<std::uint64_t> staircase(const Packing& P, const std::vector<MPoly>& gb,
                                     const MonoLess& less, std::uint32_t maxdeg, bool& complete);

}  // namespace groebner
}  // namespace fgl
