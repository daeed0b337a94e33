#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgl {

// Error taxonomy, mirrored by the CLI exit codes:
//   parse_error, math_error      -> exit 3 (bad input)
//   unsupported_error            -> exit 2 (honest decidability boundary)
//   axiom_error                  -> exit 1 (mathematical negative on valid input)
//   internal_error               -> exit 3 (engine self-check failed)

struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct math_error : std::runtime_error {
    explicit math_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct axiom_error : std::runtime_error {
    explicit axiom_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace fgl
