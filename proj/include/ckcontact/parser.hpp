#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ckcontact/errors.hpp"

namespace ckc {

// Expression in the single variable t.
class CoefficientExpr {
   public:
    enum class Op { Number, Var, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp, Tanh, Pow };

    struct Node {
        Op op;
        double value = 0.0;
        std::shared_ptr<const Node> a, b;
    };

    CoefficientExpr() : root_(std::make_shared<Node>(Node{Op::Number, 0.0, nullptr, nullptr})), src_("0") {}
    CoefficientExpr(std::shared_ptr<const Node> root, std::string src) : root_(std::move(root)), src_(std::move(src)) {}

    static CoefficientExpr constant(double v) {
        return {std::make_shared<Node>(Node{Op::Number, v, nullptr, nullptr}), std::to_string(v)};
    }

    double operator()(double t) const { return eval(*root_, t); }
    const std::string& source() const { return src_; }
    bool is_zero_constant() const { return root_->op == Op::Number && root_->value == 0.0; }

   private:
    static double eval(const Node& n, double t) {
        switch (n.op) {
            case Op::Number: return n.value;
            case Op::Var: return t;
            case Op::Add: return eval(*n.a, t) + eval(*n.b, t);
            case Op::Sub: return eval(*n.a, t) - eval(*n.b, t);
            case Op::Mul: return eval(*n.a, t) * eval(*n.b, t);
            case Op::Div: {
                double d = eval(*n.b, t);
                if (d == 0.0) throw DomainError("coefficient expression: division by zero");
                return eval(*n.a, t) / d;
            }
            case Op::Neg: return -eval(*n.a, t);
            case Op::Sin: return std::sin(eval(*n.a, t));
            case Op::Cos: return std::cos(eval(*n.a, t));
            case Op::Exp: return std::exp(eval(*n.a, t));
            case Op::Tanh: return std::tanh(eval(*n.a, t));
            case Op::Pow: return std::pow(eval(*n.a, t), eval(*n.b, t));
        }
        return 0.0;
    }

    std::shared_ptr<const Node> root_;
    std::string src_;
};

namespace detail {

class ExprParser {
   public:
    using NodePtr = std::shared_ptr<const CoefficientExpr::Node>;
    using Op = CoefficientExpr::Op;

    explicit ExprParser(std::string_view s) : s_(s) {}

    NodePtr parse() {
        skip();
        if (pos_ >= s_.size()) fail({"expression"});
        NodePtr e = expr();
        skip();
        if (pos_ < s_.size()) fail({"operator", "end of input"});
        return e;
    }

   private:
    static NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
        return std::make_shared<CoefficientExpr::Node>(CoefficientExpr::Node{op, v, std::move(a), std::move(b)});
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const { throw ParseError(pos_, std::move(expected)); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"});
    }

    NodePtr expr() {
        NodePtr left = term();
        for (;;) {
            if (accept('+')) left = make(Op::Add, left, term());
            else if (accept('-')) left = make(Op::Sub, left, term());
            else return left;
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        for (;;) {
            if (accept('*')) left = make(Op::Mul, left, factor());
            else if (accept('/')) left = make(Op::Div, left, factor());
            else return left;
        }
    }

    NodePtr factor() {
        skip();
        if (pos_ >= s_.size()) fail({"number", "'t'", "function", "'('", "'-'"});
        char c = s_[pos_];
        if (c == '-') {
            ++pos_;
            return make(Op::Neg, factor());
        }
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail({"number", "'t'", "function", "'('", "'-'"});
    }

    NodePtr number() {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) fail({"number"});
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return make(Op::Number, nullptr, nullptr, v);
    }

    NodePtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string_view name = s_.substr(start, pos_ - start);
        if (name == "t") return make(Op::Var);
        Op op;
        if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "exp") op = Op::Exp;
        else if (name == "tanh") op = Op::Tanh;
        else if (name == "pow") op = Op::Pow;
        else {
            pos_ = start;
            fail({"number", "'t'", "function", "'('", "'-'"});
        }
        expect('(');
        NodePtr a = expr();
        if (op == Op::Pow) {
            expect(',');
            NodePtr b = expr();
            expect(')');
            return make(op, a, b);
        }
        expect(')');
        return make(op, a);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline CoefficientExpr parse_coeff(const std::string& src) {
    detail::ExprParser p(src);
    return CoefficientExpr(p.parse(), src);
}

}  // namespace ckc
