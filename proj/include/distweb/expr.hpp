#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "distweb/errors.hpp"

namespace distweb {

/// Evaluator for exact-constant coordinate expressions in domain files:
/// numbers, + - * /, unary minus, parentheses, sqrt(...), cbrt(...), pi.
class ExprParser {
  public:
    static double eval(std::string_view s) {
        ExprParser p{s};
        double v = p.sum();
        p.skip_ws();
        if (p.pos_ != p.src_.size())
            throw ParseError("trailing characters in expression: '" + std::string(s) + "'");
        return v;
    }

  private:
    explicit ExprParser(std::string_view s) : src_(s) {}

    std::string_view src_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double sum() {
        double v = product();
        for (;;) {
            if (consume('+')) v += product();
            else if (consume('-')) v -= product();
            else return v;
        }
    }

    double product() {
        double v = factor();
        for (;;) {
            if (consume('*')) v *= factor();
            else if (consume('/')) v /= factor();
            else return v;
        }
    }

    double factor() {
        skip_ws();
        if (consume('-')) return -factor();
        if (consume('+')) return factor();
        if (consume('(')) {
            double v = sum();
            if (!consume(')')) throw ParseError("expected ')'");
            return v;
        }
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return name();
        throw ParseError(std::string("unexpected character '") + c + "' in expression");
    }

    double number() {
        const char* begin = src_.data() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number");
        pos_ += static_cast<size_t>(end - begin);
        return v;
    }

    double name() {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalnum(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        std::string_view id = src_.substr(start, pos_ - start);
        if (id == "pi") return M_PI;
        if (id == "sqrt" || id == "cbrt") {
            if (!consume('(')) throw ParseError("expected '(' after function name");
            double v = sum();
            if (!consume(')')) throw ParseError("expected ')'");
            return id == "sqrt" ? std::sqrt(v) : std::cbrt(v);
        }
        throw ParseError("unknown identifier '" + std::string(id) + "'");
    }
};

inline double eval_expr(std::string_view s) { return ExprParser::eval(s); }

}  // namespace distweb
