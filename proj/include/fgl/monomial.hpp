#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgl/errors.hpp"

namespace fgl {

// Exponent vectors packed into a single uint64 word.
//
// Two layouts:
//   * graded keys (power series): [deg | e1 | ... | ek] with equal-width
//     fields, so plain integer comparison is graded-lex order;
//   * plain keys (ring-element polynomials): [e1 | ... | ek], degree
//     computed on demand (the Groebner code supplies its own orders).
//
// The top bit of every field is a guard bit: exponents stay below
// 2^(width-1), and checked addition detects carries by looking at guards.
class Packing {
public:
    Packing() = default;

    static Packing graded(int vars) { return Packing(vars, /*graded=*/true); }
    static Packing plain(int vars) { return Packing(vars, /*graded=*/false); }

    int vars() const { return vars_; }
    int width() const { return width_; }
    bool is_graded() const { return graded_; }
    // largest exponent a field can hold (guard bit excluded)
    std::uint32_t max_exponent() const { return (1u << (width_ - 1)) - 1; }

    std::uint64_t pack(const std::uint32_t* e) const {
        std::uint64_t key = 0;
        std::uint32_t deg = 0;
        for (int i = 0; i < vars_; ++i) {
            if (e[i] > max_exponent())
                throw internal_error("monomial exponent overflow");
            deg += e[i];
            key |= std::uint64_t(e[i]) << shift(i);
        }
        if (graded_) {
            if (deg > max_exponent())
                throw internal_error("monomial degree overflow");
            key |= std::uint64_t(deg) << shift(-1);
        }
        return key;
    }

    std::uint64_t pack(const std::vector<std::uint32_t>& e) const {
        return pack(e.data());
    }

    void unpack(std::uint64_t key, std::uint32_t* e) const {
        const std::uint64_t m = field_mask();
        for (int i = 0; i < vars_; ++i)
            e[i] = std::uint32_t((key >> shift(i)) & m);
    }

    std::vector<std::uint32_t> unpack(std::uint64_t key) const {
        std::vector<std::uint32_t> e(vars_);
        unpack(key, e.data());
        return e;
    }

    std::uint32_t exponent(std::uint64_t key, int i) const {
        return std::uint32_t((key >> shift(i)) & field_mask());
    }

    std::uint32_t degree(std::uint64_t key) const {
        if (graded_)
            return std::uint32_t((key >> shift(-1)) & field_mask());
        std::uint32_t d = 0;
        for (int i = 0; i < vars_; ++i) d += exponent(key, i);
        return d;
    }

    // a * b as monomials; false on any field overflow
    bool mul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) const {
        if ((a & guards_) | (b & guards_)) return false;
        out = a + b;
        if (out & guards_) return false;
        return true;
    }

    std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out;
        if (!mul(a, b, out)) throw internal_error("monomial product overflow");
        return out;
    }

    // b / a if a divides b (fieldwise), else false
    bool divide(std::uint64_t b, std::uint64_t a, std::uint64_t& out) const {
        const std::uint64_t m = field_mask();
        std::uint64_t key = 0;
        std::uint32_t deg = 0;
        for (int i = 0; i < vars_; ++i) {
            std::uint32_t eb = std::uint32_t((b >> shift(i)) & m);
            std::uint32_t ea = std::uint32_t((a >> shift(i)) & m);
            if (ea > eb) return false;
            deg += eb - ea;
            key |= std::uint64_t(eb - ea) << shift(i);
        }
        if (graded_) key |= std::uint64_t(deg) << shift(-1);
        out = key;
        return true;
    }

    bool divides(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t tmp;
        return divide(b, a, tmp);
    }

    std::uint64_t lcm(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t m = field_mask();
        std::uint64_t key = 0;
        std::uint32_t deg = 0;
        for (int i = 0; i < vars_; ++i) {
            std::uint32_t ea = std::uint32_t((a >> shift(i)) & m);
            std::uint32_t eb = std::uint32_t((b >> shift(i)) & m);
            std::uint32_t e = ea > eb ? ea : eb;
            deg += e;
            key |= std::uint64_t(e) << shift(i);
        }
        if (graded_) key |= std::uint64_t(deg) << shift(-1);
        return key;
    }

    std::uint64_t one() const { return 0; }

    std::uint64_t var_key(int i, std::uint32_t e = 1) const {
        std::uint64_t key = std::uint64_t(e) << shift(i);
        if (graded_) key |= std::uint64_t(e) << shift(-1);
        return key;
    }

private:
    Packing(int vars, bool graded) : vars_(vars), graded_(graded) {
        int slots = vars + (graded ? 1 : 0);
        if (slots <= 0) slots = 1;
        if (slots <= 4)
            width_ = 16;
        else if (slots <= 8)
            width_ = 8;
        else
            throw unsupported_error("too many variables (max 7 with a degree field, 8 without)");
        guards_ = 0;
        for (int i = 0; i < slots; ++i)
            guards_ |= std::uint64_t(1) << (width_ * (i + 1) - 1);
    }

    // slot i = variable i; slot -1 = degree field (most significant)
    int shift(int i) const {
        int slot = graded_ ? (i < 0 ? vars_ : vars_ - 1 - i) : vars_ - 1 - i;
        return width_ * slot;
    }

    std::uint64_t field_mask() const { return (std::uint64_t(1) << width_) - 1; }

    int vars_ = 1;
    int width_ = 16;
    bool graded_ = false;
    std::uint64_t guards_ = 0;
};

}  // namespace fgl
