#pragma once

#include <cctype>
#include <cmath>
#include <string>

#include "beamspec/errors.hpp"

namespace beamspec::expr {

/// Minimal arithmetic-expression evaluator for load profiles w(x):
/// numbers, x, pi, e, + - * / ^, parentheses, and the usual unary functions.
class Parser {
public:
    Parser(const std::string& text, double x) : s_(text), x_(x) {}

    double parse() {
        const double v = sum();
        skip_ws();
        if (pos_ != s_.size()) throw Error("expression: trailing input at position " +
                                           std::to_string(pos_));
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double sum() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = power();
        for (;;) {
            if (eat('*')) v *= power();
            else if (eat('/')) v /= power();
            else return v;
        }
    }

    double power() {
        const double base = unary();
        if (eat('^')) return std::pow(base, power());
        return base;
    }

    double unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return primary();
    }

    double primary() {
        skip_ws();
        if (pos_ >= s_.size()) throw Error("expression: unexpected end");
        const char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            size_t used = 0;
            const double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t end = pos_;
            while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
            const std::string name = s_.substr(pos_, end - pos_);
            pos_ = end;
            if (name == "x") return x_;
            if (name == "pi") return std::acos(-1.0);
            if (name == "e") return std::exp(1.0);
            if (!eat('(')) throw Error("expression: expected '(' after " + name);
            const double arg = sum();
            if (!eat(')')) throw Error("expression: missing ')'");
            if (name == "sin") return std::sin(arg);
            if (name == "cos") return std::cos(arg);
            if (name == "tan") return std::tan(arg);
            if (name == "exp") return std::exp(arg);
            if (name == "log") return std::log(arg);
            if (name == "sqrt") return std::sqrt(arg);
            if (name == "abs") return std::abs(arg);
            if (name == "sinh") return std::sinh(arg);
            if (name == "cosh") return std::cosh(arg);
            if (name == "tanh") return std::tanh(arg);
            throw Error("expression: unknown function " + name);
        }
        if (eat('(')) {
            const double v = sum();
            if (!eat(')')) throw Error("expression: missing ')'");
            return v;
        }
        throw Error(std::string("expression: unexpected character '") + ch + "'");
    }

    std::string s_;
    size_t pos_ = 0;
    double x_;
};

inline double eval(const std::string& text, double x) { return Parser(text, x).parse(); }

}  // namespace beamspec::expr
