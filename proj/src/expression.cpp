// Copyright 2026 The noonlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "noonlab/dsl.hpp"

namespace noonlab::dsl {
namespace {

// Recursive descent over
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := number | name | name '(' expr ')' | '(' expr ')'
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const ParamValues& params) : text_(text), params_(params) {}

    double run() {
        skip_space();
        if (pos_ >= text_.size()) fail("empty expression");
        const double value = expr();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        if (!std::isfinite(value)) fail("expression is not finite", 0);
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& message, std::optional<std::size_t> at = {}) const {
        const auto where = at.value_or(pos_);
        throw ParseError(ParseErrorKind::Syntax, 1, static_cast<int>(where) + 1, message);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                const auto at = pos_;
                const double d = unary();
                if (d == 0.0) fail("division by zero", at);
                v /= d;
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return primary();
    }

    double primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (accept('(')) {
            const double v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    double number() {
        const auto start = pos_;
        double value = 0.0;
        const auto* first = text_.data() + pos_;
        const auto* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) fail("malformed number", start);
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    double name() {
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string id(text_.substr(start, pos_ - start));
        if (accept('(')) {
            const auto arg_at = pos_;
            const double x = expr();
            if (!accept(')')) fail("expected ')'");
            return call(id, x, start, arg_at);
        }
        if (id == "pi") return std::numbers::pi;
        if (auto it = params_.find(id); it != params_.end()) return it->second;
        fail("unknown identifier '" + id + "'", start);
    }

    double call(const std::string& fn, double x, std::size_t at, std::size_t arg_at) const {
        if (fn == "sqrt") {
            if (x < 0.0) fail("sqrt of a negative value", arg_at);
            return std::sqrt(x);
        }
        if (fn == "sin") return std::sin(x);
        if (fn == "cos") return std::cos(x);
        if (fn == "tan") return std::tan(x);
        if (fn == "atan") return std::atan(x);
        if (fn == "asin" || fn == "acos") {
            if (x < -1.0 || x > 1.0) fail(fn + " argument outside [-1, 1]", arg_at);
            return fn == "asin" ? std::asin(x) : std::acos(x);
        }
        fail("unknown function '" + fn + "'", at);
    }

    std::string_view text_;
    const ParamValues& params_;
    std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(std::string_view expr, const ParamValues& params) {
    return ExpressionParser(expr, params).run();
}

}  // namespace noonlab::dsl
