#include "fgl/expr.hpp"

#include <cctype>

namespace fgl {
namespace expr {

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }

    bool peek(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }

    bool accept(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) throw parse_error(std::string("expected '") + c + "'", i);
    }

    std::unique_ptr<Node> make(Node::Kind k, std::size_t pos) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->pos = pos;
        return n;
    }

    std::unique_ptr<Node> parse_expr() {
        auto lhs = parse_term();
        while (true) {
            skip_ws();
            if (accept('+')) {
                auto n = make(Node::Kind::Add, i);
                n->kids.push_back(std::move(lhs));
                n->kids.push_back(parse_term());
                lhs = std::move(n);
            } else if (accept('-')) {
                auto n = make(Node::Kind::Sub, i);
                n->kids.push_back(std::move(lhs));
                n->kids.push_back(parse_term());
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<Node> parse_term() {
        auto lhs = parse_factor();
        while (true) {
            skip_ws();
            if (accept('*')) {
                auto n = make(Node::Kind::Mul, i);
                n->kids.push_back(std::move(lhs));
                n->kids.push_back(parse_factor());
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<Node> parse_factor() {
        skip_ws();
        if (accept('-')) {
            auto n = make(Node::Kind::Neg, i);
            n->kids.push_back(parse_factor());
            return n;
        }
        return parse_power();
    }

    std::unique_ptr<Node> parse_power() {
        auto base = parse_atom();
        skip_ws();
        if (accept('^')) {
            std::size_t pos = i;
            auto n = make(Node::Kind::Pow, pos);
            n->value = parse_exponent();
            n->kids.push_back(std::move(base));
            return n;
        }
        return base;
    }

    mpz_class parse_exponent() {
        skip_ws();
        bool parens = accept('(');
        skip_ws();
        bool neg = false;
        if (parens && accept('-')) neg = true;
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw parse_error("expected integer exponent", i);
        mpz_class v = read_integer();
        if (parens) expect(')');
        return neg ? mpz_class(-v) : v;
    }

    mpz_class read_integer() {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return mpz_class(s.substr(start, i - start), 10);
    }

    std::unique_ptr<Node> parse_atom() {
        skip_ws();
        if (i >= s.size()) throw parse_error("unexpected end of expression", i);
        char c = s[i];
        if (c == '(') {
            ++i;
            auto n = parse_expr();
            expect(')');
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto n = make(Node::Kind::Int, i);
            n->value = read_integer();
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto n = make(Node::Kind::Var, i);
            std::size_t start = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            n->name = s.substr(start, i - start);
            return n;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
};

}  // namespace

std::unique_ptr<Node> parse(const std::string& text) {
    Parser p(text);
    auto n = p.parse_expr();
    p.skip_ws();
    if (p.i != text.size()) throw parse_error("trailing input", p.i);
    return n;
}

}  // namespace expr
}  // namespace fgl
