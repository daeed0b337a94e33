#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "fgl/errors.hpp"

namespace fgl {
namespace expr {

// AST for the element grammar: integers, identifiers, + - *, ^ (binds
// tightest, integer exponent, negative exponents in parentheses), unary
// minus, parentheses.
struct Node {
    enum class Kind { Int, Var, Add, Sub, Mul, Neg, Pow };
    Kind kind;
    mpz_class value;           // Int; Pow exponent
    std::string name;          // Var
    std::size_t pos = 0;       // source position for error reports
    std::vector<std::unique_ptr<Node>> kids;
};

std::unique_ptr<Node> parse(const std::string& text);

}  // namespace expr
}  // namespace fgl
