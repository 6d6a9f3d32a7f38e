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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "noonlab/dsl.hpp"

namespace noonlab::dsl {

std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Syntax: return "Syntax";
        case ParseErrorKind::UnknownDirective: return "UnknownDirective";
        case ParseErrorKind::UndeclaredMode: return "UndeclaredMode";
        case ParseErrorKind::DuplicateMode: return "DuplicateMode";
        case ParseErrorKind::Semantic: return "Semantic";
    }
    return "Unknown";
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
    std::string text;
    int column = 1;  // 1-based
};

bool is_label(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.';
    });
}

bool is_identifier(std::string_view s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

class LineParser {
public:
    LineParser(std::string_view line, int number) : line_(line), number_(number) {
        std::size_t i = 0;
        while (i < line_.size()) {
            while (i < line_.size() && std::isspace(static_cast<unsigned char>(line_[i]))) ++i;
            if (i >= line_.size()) break;
            const auto start = i;
            while (i < line_.size() && !std::isspace(static_cast<unsigned char>(line_[i]))) ++i;
            tokens_.push_back({std::string(line_.substr(start, i - start)), static_cast<int>(start) + 1});
        }
    }

    const std::vector<Token>& tokens() const { return tokens_; }
    int number() const { return number_; }
    std::string_view text() const { return line_; }

    [[noreturn]] void fail(ParseErrorKind kind, int column, const std::string& message) const {
        throw ParseError(kind, number_, std::max(1, column), message);
    }

    int end_column() const { return static_cast<int>(line_.size()) + 1; }

    const Token& token(std::size_t i, const char* what) const {
        if (i >= tokens_.size()) fail(ParseErrorKind::Syntax, end_column(), std::string("expected ") + what);
        return tokens_[i];
    }

    void expect_count(std::size_t n, const char* usage) const {
        if (tokens_.size() < n) {
            fail(ParseErrorKind::Syntax, end_column(), std::string("expected: ") + usage);
        }
        if (tokens_.size() > n) {
            fail(ParseErrorKind::Syntax, tokens_[n].column,
                 "unexpected '" + tokens_[n].text + "' (expected: " + usage + ")");
        }
    }

    std::string label(std::size_t i, const char* what) const {
        const auto& t = token(i, what);
        if (!is_label(t.text)) fail(ParseErrorKind::Syntax, t.column, "invalid mode label '" + t.text + "'");
        return t.text;
    }

    int count(std::size_t i) const {
        const auto& t = token(i, "photon count");
        int value = -1;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || value < 0) {
            fail(ParseErrorKind::Syntax, t.column, "invalid photon count '" + t.text + "'");
        }
        if (value > kPhotonCap) {
            fail(ParseErrorKind::Semantic, t.column, "photon count " + t.text + " exceeds cap");
        }
        return value;
    }

    /// Returns the text after `key=` starting at token `i`, and its column.
    std::pair<std::string, int> keyed_expression(std::size_t i, std::string_view key) const {
        const auto& t = token(i, "theta=<expr>");
        std::size_t pos = static_cast<std::size_t>(t.column - 1);
        if (line_.substr(pos, key.size()) != key) {
            fail(ParseErrorKind::Syntax, t.column, "expected '" + std::string(key) + "=<expr>'");
        }
        pos += key.size();
        while (pos < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos]))) ++pos;
        if (pos >= line_.size() || line_[pos] != '=') {
            fail(ParseErrorKind::Syntax, static_cast<int>(pos) + 1, "expected '='");
        }
        ++pos;
        while (pos < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos]))) ++pos;
        auto expr = trim(line_.substr(pos));
        if (expr.empty()) fail(ParseErrorKind::Syntax, static_cast<int>(pos) + 1, "missing angle expression");
        return {expr, static_cast<int>(pos) + 1};
    }

private:
    std::string_view line_;
    int number_;
    std::vector<Token> tokens_;
};

// Tracks which labels exist at each point of the program.
class Scope {
public:
    enum class Kind { Scalar, SubMode };

    void declare_scalar(const LineParser& lp, const Token& t) {
        check_fresh(lp, t, t.text);
        labels_[t.text] = Kind::Scalar;
    }

    void declare_path(const LineParser& lp, const Token& t) {
        check_fresh(lp, t, t.text);
        check_fresh(lp, t, t.text + "H");
        check_fresh(lp, t, t.text + "V");
        paths_.insert(t.text);
        labels_[t.text + "H"] = Kind::SubMode;
        labels_[t.text + "V"] = Kind::SubMode;
    }

    void require_mode(const LineParser& lp, const Token& t) const {
        if (labels_.count(t.text)) return;
        report_missing(lp, t);
    }

    void require_path(const LineParser& lp, const Token& t) const {
        if (paths_.count(t.text)) return;
        if (labels_.count(t.text)) {
            lp.fail(ParseErrorKind::Semantic, t.column, "mode '" + t.text + "' is not polarized");
        }
        report_missing(lp, t);
    }

    bool is_path(const std::string& s) const { return paths_.count(s) > 0; }
    bool is_label(const std::string& s) const { return labels_.count(s) > 0; }

    void consume_mode(const std::string& label, int line) {
        labels_.erase(label);
        consumed_[label] = line;
        // A polarized path that loses one sub-mode leaves a scalar behind.
        for (auto it = paths_.begin(); it != paths_.end(); ++it) {
            if (label == *it + "H" || label == *it + "V") {
                const auto other = label == *it + "H" ? *it + "V" : *it + "H";
                labels_[other] = Kind::Scalar;
                consumed_[*it] = line;
                paths_.erase(it);
                break;
            }
        }
    }

    void consume_path(const std::string& path, int line) {
        paths_.erase(path);
        labels_.erase(path + "H");
        labels_.erase(path + "V");
        consumed_[path] = line;
        consumed_[path + "H"] = line;
        consumed_[path + "V"] = line;
    }

    void add_path(const std::string& path) {
        paths_.insert(path);
        labels_[path + "H"] = Kind::SubMode;
        labels_[path + "V"] = Kind::SubMode;
        consumed_.erase(path);
        consumed_.erase(path + "H");
        consumed_.erase(path + "V");
    }

    bool clashes(const std::string& label) const {
        return labels_.count(label) || paths_.count(label) || consumed_.count(label);
    }

private:
    void check_fresh(const LineParser& lp, const Token& t, const std::string& label) const {
        if (labels_.count(label) || paths_.count(label) || consumed_.count(label)) {
            lp.fail(ParseErrorKind::DuplicateMode, t.column, "duplicate mode '" + label + "'");
        }
    }

    void report_missing(const LineParser& lp, const Token& t) const {
        if (auto it = consumed_.find(t.text); it != consumed_.end()) {
            lp.fail(ParseErrorKind::Semantic, t.column,
                    "mode '" + t.text + "' was consumed at line " + std::to_string(it->second));
        }
        lp.fail(ParseErrorKind::UndeclaredMode, t.column, "undeclared mode '" + t.text + "'");
    }

    std::map<std::string, Kind> labels_;
    std::set<std::string> paths_;
    std::map<std::string, int> consumed_;
};

class Parser {
public:
    CircuitIR run(std::string_view source) {
        int number = 0;
        std::size_t start = 0;
        while (start <= source.size()) {
            auto end = source.find('\n', start);
            if (end == std::string_view::npos) end = source.size();
            ++number;
            auto line = source.substr(start, end - start);
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            parse_line(LineParser(line, number));
            if (end == source.size()) break;
            start = end + 1;
        }
        return std::move(ir_);
    }

private:
    void parse_line(const LineParser& lp) {
        if (lp.tokens().empty()) return;
        const auto& directive = lp.tokens()[0];
        const auto& d = directive.text;
        if (d == "mode") return parse_mode(lp);
        if (d == "param") return parse_param(lp);
        if (d == "input") return parse_input(lp);
        if (d == "bs") return parse_bs(lp);
        if (d == "rot") return parse_rot(lp);
        if (d == "pbs") return parse_pbs(lp);
        if (d == "inject") return parse_inject(lp);
        if (d == "detect") return parse_detect(lp);
        lp.fail(ParseErrorKind::UnknownDirective, directive.column, "unknown directive '" + d + "'");
    }

    void parse_mode(const LineParser& lp) {
        const auto label = lp.label(1, "mode label");
        bool polarized = false;
        if (lp.tokens().size() >= 3) {
            const auto& flag = lp.tokens()[2];
            if (flag.text != "pol") {
                lp.fail(ParseErrorKind::Syntax, flag.column, "expected 'pol', got '" + flag.text + "'");
            }
            polarized = true;
        }
        lp.expect_count(polarized ? 3 : 2, "mode <label> [pol]");
        if (polarized) {
            scope_.declare_path(lp, lp.tokens()[1]);
        } else {
            scope_.declare_scalar(lp, lp.tokens()[1]);
        }
        ir_.modes.push_back({label, polarized});
    }

    void parse_param(const LineParser& lp) {
        const auto& name = lp.token(1, "parameter name");
        std::string id = name.text;
        auto eq_in_name = id.find('=');
        if (eq_in_name != std::string::npos) id = id.substr(0, eq_in_name);
        if (!is_identifier(id) || id == "pi") {
            lp.fail(ParseErrorKind::Syntax, name.column, "invalid parameter name '" + id + "'");
        }
        if (values_.count(id)) {
            lp.fail(ParseErrorKind::Semantic, name.column, "duplicate parameter '" + id + "'");
        }
        auto [expr, column] = lp.keyed_expression(1, id);
        const double value = checked_expression(lp, expr, column);
        values_[id] = value;
        ir_.params.push_back({id, expr});
    }

    void parse_input(const LineParser& lp) {
        const auto& directive = lp.tokens()[0];
        if (seen_input_) lp.fail(ParseErrorKind::Semantic, directive.column, "duplicate input declaration");
        if (!ir_.steps.empty()) {
            lp.fail(ParseErrorKind::Semantic, directive.column, "input must precede circuit steps");
        }
        seen_input_ = true;
        const auto n = lp.tokens().size();
        if (n < 3 || n % 2 == 0) {
            lp.fail(ParseErrorKind::Syntax, n < 3 ? lp.end_column() : lp.tokens().back().column,
                    "expected: input <label> <n> [<label> <n> ...]");
        }
        std::set<std::string> seen;
        for (std::size_t i = 1; i < n; i += 2) {
            const auto label = lp.label(i, "mode label");
            scope_.require_mode(lp, lp.tokens()[i]);
            if (!seen.insert(label).second) {
                lp.fail(ParseErrorKind::Semantic, lp.tokens()[i].column, "mode '" + label + "' listed twice");
            }
            ir_.input.push_back({label, lp.count(i + 1)});
        }
    }

    void parse_bs(const LineParser& lp) {
        const auto a = lp.label(1, "first mode");
        const auto c = lp.label(2, "second mode");
        scope_.require_mode(lp, lp.tokens()[1]);
        scope_.require_mode(lp, lp.tokens()[2]);
        if (a == c) lp.fail(ParseErrorKind::Semantic, lp.tokens()[2].column, "beam splitter modes must differ");
        auto [expr, column] = lp.keyed_expression(3, "theta");
        checked_expression(lp, expr, column);
        push(lp, BsStep{a, c, expr});
    }

    void parse_rot(const LineParser& lp) {
        const auto spatial = lp.label(1, "polarized path");
        scope_.require_path(lp, lp.tokens()[1]);
        auto [expr, column] = lp.keyed_expression(2, "theta");
        checked_expression(lp, expr, column);
        push(lp, RotStep{spatial, expr});
    }

    std::optional<std::string> port(const LineParser& lp, std::size_t i, const char* what) {
        const auto& t = lp.token(i, what);
        if (t.text == "-") return std::nullopt;
        return lp.label(i, what);
    }

    void parse_pbs(const LineParser& lp) {
        lp.expect_count(6, "pbs <in1> <in2> -> <out1> <out2>");
        const auto& toks = lp.tokens();
        if (toks[3].text != "->") lp.fail(ParseErrorKind::Syntax, toks[3].column, "expected '->'");
        if (toks[1].text == "-") lp.fail(ParseErrorKind::Syntax, toks[1].column, "first PBS input is required");
        PbsStep step{lp.label(1, "input path"), port(lp, 2, "input path"), port(lp, 4, "output path"),
                     port(lp, 5, "output path")};
        scope_.require_path(lp, toks[1]);
        if (step.in2) {
            scope_.require_path(lp, toks[2]);
            if (*step.in2 == step.in1) lp.fail(ParseErrorKind::Semantic, toks[2].column, "PBS inputs must differ");
        }
        if (step.out1 && step.out2 && *step.out1 == *step.out2) {
            lp.fail(ParseErrorKind::Semantic, toks[5].column, "PBS outputs must differ");
        }
        std::vector<std::string> fresh;
        for (std::size_t k : {4u, 5u}) {
            const auto& out = k == 4 ? step.out1 : step.out2;
            if (!out) continue;
            if (*out == step.in1 || (step.in2 && *out == *step.in2)) continue;
            if (scope_.is_path(*out)) continue;  // existing path, must be empty at run time
            if (scope_.is_label(*out)) {
                lp.fail(ParseErrorKind::Semantic, toks[k].column,
                        "PBS output '" + *out + "' is an existing non-polarized mode");
            }
            if (scope_.is_label(*out + "H") || scope_.is_label(*out + "V")) {
                lp.fail(ParseErrorKind::DuplicateMode, toks[k].column,
                        "PBS output '" + *out + "' collides with an existing mode");
            }
            fresh.push_back(*out);
        }
        auto reused = [&](const std::string& in) {
            return (step.out1 && *step.out1 == in) || (step.out2 && *step.out2 == in);
        };
        if (!reused(step.in1)) scope_.consume_path(step.in1, lp.number());
        if (step.in2 && !reused(*step.in2)) scope_.consume_path(*step.in2, lp.number());
        for (const auto& f : fresh) scope_.add_path(f);
        push(lp, std::move(step));
    }

    void parse_inject(const LineParser& lp) {
        lp.expect_count(3, "inject <label> <n>");
        const auto label = lp.label(1, "mode label");
        scope_.require_mode(lp, lp.tokens()[1]);
        push(lp, InjectStep{label, lp.count(2)});
    }

    void parse_detect(const LineParser& lp) {
        // Accept "detect x = 1", "detect x=1" and "detect x =1".
        const auto& first = lp.token(1, "detector mode");
        const auto after = lp.text().substr(static_cast<std::size_t>(first.column - 1));
        const auto eq = after.find('=');
        if (eq == std::string_view::npos) {
            lp.fail(ParseErrorKind::Syntax, lp.end_column(), "expected: detect <label> = <n>");
        }
        const auto label = trim(after.substr(0, eq));
        if (!is_label(label)) lp.fail(ParseErrorKind::Syntax, first.column, "invalid mode label '" + label + "'");
        const auto rest_column = first.column + static_cast<int>(eq) + 1;
        LineParser rhs(lp.text().substr(static_cast<std::size_t>(rest_column - 1)), lp.number());
        if (rhs.tokens().size() != 1) {
            lp.fail(ParseErrorKind::Syntax, rest_column, "expected a single photon count after '='");
        }
        int count = 0;
        try {
            count = rhs.count(0);
        } catch (const ParseError& e) {
            throw ParseError(e.kind(), lp.number(), rest_column + e.column() - 1, e.message());
        }
        scope_.require_mode(lp, Token{label, first.column});
        scope_.consume_mode(label, lp.number());
        push(lp, DetectStep{label, count});
    }

    double checked_expression(const LineParser& lp, const std::string& expr, int column) {
        try {
            return evaluate_expression(expr, values_);
        } catch (const ParseError& e) {
            throw ParseError(ParseErrorKind::Syntax, lp.number(), column + e.column() - 1, e.message());
        }
    }

    void push(const LineParser& lp, StepOp op) { ir_.steps.push_back(Step{std::move(op), lp.number()}); }

    CircuitIR ir_;
    Scope scope_;
    ParamValues values_;
    bool seen_input_ = false;
};

}  // namespace

CircuitIR parse(std::string_view source) { return Parser().run(source); }

std::string format_step(const StepOp& op) {
    std::ostringstream os;
    auto port = [](const std::optional<std::string>& p) { return p ? *p : std::string("-"); };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BsStep>) {
                os << "bs " << s.mode_a << ' ' << s.mode_c << " theta=" << s.theta;
            } else if constexpr (std::is_same_v<T, RotStep>) {
                os << "rot " << s.spatial << " theta=" << s.theta;
            } else if constexpr (std::is_same_v<T, PbsStep>) {
                os << "pbs " << s.in1 << ' ' << port(s.in2) << " -> " << port(s.out1) << ' ' << port(s.out2);
            } else if constexpr (std::is_same_v<T, InjectStep>) {
                os << "inject " << s.mode << ' ' << s.count;
            } else {
                os << "detect " << s.mode << " = " << s.count;
            }
        },
        op);
    return os.str();
}

std::string pretty_print(const CircuitIR& ir) {
    std::ostringstream os;
    for (const auto& m : ir.modes) os << "mode " << m.label << (m.polarized ? " pol" : "") << '\n';
    for (const auto& p : ir.params) os << "param " << p.name << " = " << p.expr << '\n';
    if (!ir.input.empty()) {
        os << "input";
        for (const auto& e : ir.input) os << ' ' << e.mode << ' ' << e.count;
        os << '\n';
    }
    for (const auto& s : ir.steps) os << format_step(s.op) << '\n';
    return os.str();
}

}  // namespace noonlab::dsl
