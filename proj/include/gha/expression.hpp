#pragma once

// Tiny expression grammar for user-defined characteristic functions and
// weights; rational functions of x and x^{1/k}:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | primary ('^' integer)?
//   primary:= number | 'x' | '(' expr ')' | 'root' '(' expr ',' integer ')'
//
// Evaluation throws gha::domain_error on division by zero, root of a
// negative value, or a non-finite result.

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gha/errors.hpp"

namespace gha::expr {

struct parse_error : gha::domain_error {
    using gha::domain_error::domain_error;
};

class Expression {
    struct Node {
        enum class Kind { constant, variable, add, sub, mul, div, neg, pow_int, root };
        Kind kind;
        double value = 0.0; // constant
        int power = 0;      // pow_int exponent / root index
        std::shared_ptr<const Node> lhs, rhs;
    };
    using NodePtr = std::shared_ptr<const Node>;

public:
    Expression() = default;

    static Expression parse(const std::string& src) {
        Parser p{src, 0};
        Expression e;
        e.root_ = p.parse_expr();
        p.skip_ws();
        if (p.pos != src.size())
            throw parse_error("f_expr: trailing input at position " + std::to_string(p.pos) +
                              " in \"" + src + "\"");
        e.src_ = src;
        return e;
    }

    bool empty() const { return root_ == nullptr; }
    const std::string& source() const { return src_; }

    double operator()(double x) const {
        if (!root_) throw gha::domain_error("f_expr: evaluating empty expression");
        const double v = eval(*root_, x);
        if (!std::isfinite(v))
            throw gha::domain_error("f_expr: non-finite value at x = " + std::to_string(x));
        return v;
    }

private:
    NodePtr root_;
    std::string src_;

    static double eval(const Node& n, double x) {
        using K = Node::Kind;
        switch (n.kind) {
            case K::constant: return n.value;
            case K::variable: return x;
            case K::add: return eval(*n.lhs, x) + eval(*n.rhs, x);
            case K::sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
            case K::mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
            case K::div: {
                const double den = eval(*n.rhs, x);
                if (den == 0.0)
                    throw gha::domain_error("f_expr: division by zero at x = " +
                                            std::to_string(x));
                return eval(*n.lhs, x) / den;
            }
            case K::neg: return -eval(*n.lhs, x);
            case K::pow_int: {
                const double base = eval(*n.lhs, x);
                if (n.power < 0 && base == 0.0)
                    throw gha::domain_error("f_expr: zero raised to a negative power at x = " +
                                            std::to_string(x));
                return std::pow(base, n.power);
            }
            case K::root: {
                const double v = eval(*n.lhs, x);
                if (v < 0.0)
                    throw gha::domain_error("f_expr: root of a negative value at x = " +
                                            std::to_string(x));
                return std::pow(v, 1.0 / n.power);
            }
        }
        throw std::logic_error("f_expr: corrupt node");
    }

    struct Parser {
        const std::string& s;
        size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& what) {
            throw parse_error("f_expr: " + what + " at position " + std::to_string(pos) +
                              " in \"" + s + "\"");
        }

        static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

        NodePtr parse_expr() {
            NodePtr lhs = parse_term();
            for (;;) {
                if (eat('+'))
                    lhs = make({Node::Kind::add, 0, 0, lhs, parse_term()});
                else if (eat('-'))
                    lhs = make({Node::Kind::sub, 0, 0, lhs, parse_term()});
                else
                    return lhs;
            }
        }

        NodePtr parse_term() {
            NodePtr lhs = parse_factor();
            for (;;) {
                if (eat('*'))
                    lhs = make({Node::Kind::mul, 0, 0, lhs, parse_factor()});
                else if (eat('/'))
                    lhs = make({Node::Kind::div, 0, 0, lhs, parse_factor()});
                else
                    return lhs;
            }
        }

        NodePtr parse_factor() {
            if (eat('-')) return make({Node::Kind::neg, 0, 0, parse_factor(), nullptr});
            NodePtr base = parse_primary();
            if (eat('^')) {
                const int k = parse_int("integer exponent");
                return make({Node::Kind::pow_int, 0, k, base, nullptr});
            }
            return base;
        }

        NodePtr parse_primary() {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of input");
            const char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr inner = parse_expr();
                if (!eat(')')) fail("expected ')'");
                return inner;
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
            if (s.compare(pos, 4, "root") == 0) {
                pos += 4;
                if (!eat('(')) fail("expected '(' after root");
                NodePtr arg = parse_expr();
                if (!eat(',')) fail("expected ',' in root(expr, k)");
                const int k = parse_int("root index");
                if (k < 1) fail("root index must be >= 1");
                if (!eat(')')) fail("expected ')' after root");
                return make({Node::Kind::root, 0, k, arg, nullptr});
            }
            if (c == 'x') {
                ++pos;
                return make({Node::Kind::variable, 0, 0, nullptr, nullptr});
            }
            fail(std::string("unexpected character '") + c + "'");
        }

        NodePtr parse_number() {
            size_t consumed = 0;
            double v;
            try {
                v = std::stod(s.substr(pos), &consumed);
            } catch (const std::exception&) {
                fail("malformed number");
            }
            pos += consumed;
            return make({Node::Kind::constant, v, 0, nullptr, nullptr});
        }

        int parse_int(const std::string& what) {
            skip_ws();
            size_t start = pos;
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected " + what);
            return std::stoi(s.substr(start, pos - start));
        }
    };
};

} // namespace gha::expr
