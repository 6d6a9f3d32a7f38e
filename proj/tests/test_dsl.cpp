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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "noonlab/circuits.hpp"
#include "noonlab/dsl.hpp"
#include "noonlab/presets.hpp"
#include "noonlab/report.hpp"
#include "test_support.hpp"

namespace noonlab::dsl {
namespace {

constexpr double kPi = std::numbers::pi;

struct BadSource {
    const char* text;
    ParseErrorKind kind;
    int line;
    int column;
};

ParseError parse_error(std::string_view source) {
    try {
        parse(source);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "parsed without error:\n" << source;
    return ParseError(ParseErrorKind::Syntax, 0, 0, "");
}

TEST(Expression, ClosedSet) {
    EXPECT_DOUBLE_EQ(evaluate_expression("pi/4", {}), kPi / 4);
    EXPECT_DOUBLE_EQ(evaluate_expression("atan(1/sqrt(2))", {}), std::atan(1 / std::sqrt(2.0)));
    EXPECT_DOUBLE_EQ(evaluate_expression("acos(sqrt(1/3))", {}), std::acos(std::sqrt(1.0 / 3.0)));
    EXPECT_DOUBLE_EQ(evaluate_expression("-0.25 + 2*(3 - 1)", {}), 3.75);
    EXPECT_DOUBLE_EQ(evaluate_expression("1e-3", {}), 1e-3);
    EXPECT_DOUBLE_EQ(evaluate_expression("t/2", {{"t", 1.5}}), 0.75);
}

TEST(Expression, ErrorsCarryColumns) {
    auto column_of = [](std::string_view e) {
        try {
            evaluate_expression(e, {});
        } catch (const ParseError& err) {
            return err.column();
        }
        return -1;
    };
    EXPECT_EQ(column_of("pi/"), 4);
    EXPECT_EQ(column_of("foo(1)"), 1);
    EXPECT_EQ(column_of("1/0"), 3);
    EXPECT_EQ(column_of("acos(2)"), 6);
    EXPECT_EQ(column_of("(1"), 3);
    EXPECT_EQ(column_of("2 $"), 3);
}

TEST(Parse, SmallestHeraldingCircuit) {
    const auto ir = parse("mode a\nmode c\ninput a 1\ninject c 1\nbs a c theta=pi/4\ndetect c = 1");
    ASSERT_EQ(ir.steps.size(), 3u);
    EXPECT_EQ(ir.modes.size(), 2u);
    EXPECT_TRUE(std::holds_alternative<BsStep>(ir.steps[1].op));
    EXPECT_TRUE(std::holds_alternative<DetectStep>(ir.steps[2].op));
    EXPECT_EQ(ir.steps[2].line, 6);
    EXPECT_EQ(ir.input, (std::vector<InputEntry>{{"a", 1}}));
}

TEST(Parse, DetectSpacingVariants) {
    for (const char* d : {"detect c = 1", "detect c=1", "detect c =1", "detect c= 1"}) {
        const auto ir = parse(std::string("mode c\n") + d);
        EXPECT_EQ(std::get<DetectStep>(ir.steps[0].op), (DetectStep{"c", 1})) << d;
    }
}

TEST(Parse, CommentsAndBlankLines) {
    const auto ir = parse("# header\n\nmode a   # trailing\n   \nmode b pol\r\nrot b theta=0.5 # note\n");
    EXPECT_EQ(ir.modes, (std::vector<ModeDecl>{{"a", false}, {"b", true}}));
    EXPECT_EQ(ir.steps.size(), 1u);
    EXPECT_EQ(ir.steps[0].line, 6);
}

TEST(Parse, PositionedErrors) {
    const BadSource cases[] = {
        {"bs a c theta=pi/4", ParseErrorKind::UndeclaredMode, 1, 4},
        {"mode a\nmode b\nbs a q theta=pi/4", ParseErrorKind::UndeclaredMode, 3, 6},
        {"mode a\nmode a", ParseErrorKind::DuplicateMode, 2, 6},
        {"mode 1 pol\nmode 1H", ParseErrorKind::DuplicateMode, 2, 6},
        {"mode a\nfrobnicate a", ParseErrorKind::UnknownDirective, 2, 1},
        {"mode a\nmode b\nbs a b theta=pi/", ParseErrorKind::Syntax, 3, 17},
        {"mode a\nmode b\nbs a b phi=1", ParseErrorKind::Syntax, 3, 8},
        {"mode a\nmode b\nbs a b", ParseErrorKind::Syntax, 3, 7},
        {"mode a\nrot a theta=1", ParseErrorKind::Semantic, 2, 5},
        {"mode a\ninput a -1", ParseErrorKind::Syntax, 2, 9},
        {"mode a\ninput a 1\ninput a 1", ParseErrorKind::Semantic, 3, 1},
        {"mode a\nmode c\ninject c 1\ninput a 1", ParseErrorKind::Semantic, 4, 1},
        {"mode a\nmode c\ndetect c = 1\nbs a c theta=0", ParseErrorKind::Semantic, 4, 6},
        {"mode a\ndetect a = x", ParseErrorKind::Syntax, 2, 12},
        {"mode a\nmode b\nbs a a theta=0", ParseErrorKind::Semantic, 3, 6},
        {"mode 1 pol\npbs 1 - => 3 4", ParseErrorKind::Syntax, 2, 9},
        {"mode 1 pol\npbs 1 - -> 3 4\nrot 1 theta=0", ParseErrorKind::Semantic, 3, 5},
        {"mode 1 pol\nmode x\npbs 1 - -> x 4", ParseErrorKind::Semantic, 3, 12},
        {"mode a\nparam t = 1\nparam t = 2", ParseErrorKind::Semantic, 3, 7},
        {"mode a\nmode b\nbs a b theta=unknown_t", ParseErrorKind::Syntax, 3, 14},
        {"mode a pola", ParseErrorKind::Syntax, 1, 8},
    };
    for (const auto& c : cases) {
        const auto e = parse_error(c.text);
        EXPECT_EQ(e.kind(), c.kind) << c.text << "\n-> " << e.what();
        EXPECT_EQ(e.line(), c.line) << c.text << "\n-> " << e.what();
        EXPECT_EQ(e.column(), c.column) << c.text << "\n-> " << e.what();
    }
}

TEST(Parse, ErrorPositionsLieInsideTheSource) {
    const char* sources[] = {
        "bs", "mode", "mode a\nbs a", "mode a\ninput", "pbs 1 2 -> 3", "mode a\ndetect a", "mode a\ndetect a =",
        "mode a\nparam", "mode a\nparam x", "mode a\nparam x =", "mode a\nmode b\nbs a b theta=",
        "mode a\nmode b\nbs a b theta=(((", "mode a\ninject a", "mode a\ninject a 1 2",
    };
    for (const char* s : sources) {
        const auto e = parse_error(s);
        std::vector<std::string> lines;
        std::string text(s);
        std::size_t start = 0;
        while (true) {
            const auto end = text.find('\n', start);
            lines.push_back(text.substr(start, end - start));
            if (end == std::string::npos) break;
            start = end + 1;
        }
        ASSERT_GE(e.line(), 1) << s;
        ASSERT_LE(e.line(), static_cast<int>(lines.size())) << s;
        EXPECT_GE(e.column(), 1) << s;
        EXPECT_LE(e.column(), static_cast<int>(lines[e.line() - 1].size()) + 1) << s << " -> " << e.what();
    }
}

TEST(Parse, ErrorMessageFormat) {
    const auto e = parse_error("mode a\nmode b\nbs a q theta=pi/4");
    EXPECT_STREQ(e.what(), "line 3: undeclared mode 'q'");
    const auto consumed = parse_error("mode a\nmode c\ndetect c = 1\nbs a c theta=0");
    EXPECT_STREQ(consumed.what(), "line 4: mode 'c' was consumed at line 3");
}

TEST(PrettyPrint, PresetsRoundTrip) {
    for (const auto& [name, source] : all_presets()) {
        const auto ir = parse(source);
        const auto printed = pretty_print(ir);
        EXPECT_EQ(parse(printed), ir) << name;
        EXPECT_EQ(pretty_print(parse(printed)), printed) << name;
    }
    for (int p = 9; p <= 12; ++p) {
        const auto ir = parse(noon_source(p));
        EXPECT_EQ(parse(pretty_print(ir)), ir) << p;
    }
}

TEST(Params, OverridesAndDependencies) {
    const auto ir = parse("mode a\nparam t = pi/8\nparam u = 2*t\nmode b\nbs a b theta=u");
    auto values = resolve_params(ir);
    EXPECT_DOUBLE_EQ(values["u"], kPi / 4);
    values = resolve_params(ir, {{"t", 0.5}});
    EXPECT_DOUBLE_EQ(values["u"], 1.0);
    EXPECT_EQ(support::kind_of([&] { resolve_params(ir, {{"zz", 0.1}}); }), ErrorKind::InvalidArgument);
}

TEST(Execute, UnitaryOnlyCircuitHasProbabilityOne) {
    const auto ir = parse("mode a\nmode b\ninput a 2 b 1\nbs a b theta=0.3\nbs a b theta=1.1");
    const auto r = execute(ir);
    EXPECT_EQ(r.probability, 1.0);
    EXPECT_FALSE(r.empty);
    EXPECT_NEAR(r.state.norm(), 1.0, 1e-12);
}

TEST(Execute, EntanglerPreset) {
    const auto r = execute(parse(entangler_source()));
    EXPECT_NEAR(r.probability, 1.0 / 18.0, 1e-12);
    EXPECT_EQ(r.state.registry(), circuits::singlet_target().registry());
    EXPECT_NEAR(fidelity(r.state, circuits::singlet_target()), 1.0, 1e-10);
}

TEST(Execute, NoonPresets) {
    EXPECT_NEAR(execute(parse(noon_source(6))).probability, 640.0 / 6561.0, 1e-12);
    EXPECT_NEAR(execute(parse(noon_source(4))).probability, 16.0 / 243.0, 1e-12);
    EXPECT_EQ(execute(parse(noon_source(2))).probability, 1.0);
}

TEST(Execute, BlockPresetZeroAtQuarterTurn) {
    const auto ir = parse(filter_block_source(2, "pi/4"));
    const auto r = execute(ir);
    EXPECT_EQ(r.state.amplitude({1, 1}), Amplitude(0.0));
    EXPECT_NEAR(r.probability, 1.0 / 32.0, 1e-14);
}

TEST(Execute, TraceListsEveryStep) {
    const auto ir = parse(entangler_source());
    ExecOptions options;
    options.trace = true;
    const auto r = execute(ir, options);
    ASSERT_EQ(r.stages.size(), ir.steps.size() + 1);
    EXPECT_EQ(r.stages.front().name, "input");
    EXPECT_EQ(r.stages[1].name, "bs 1H 2H theta=theta_mix");
}

TEST(Execute, ZeroProbabilityHeraldStops) {
    const auto ir = parse("mode a\nmode c\nmode x\ninput a 1\ninject c 1\nbs a c theta=pi/4\ndetect c = 1\n"
                          "bs a x theta=0.3");
    ExecOptions options;
    options.trace = true;
    const auto r = execute(ir, options);
    EXPECT_TRUE(r.empty);
    EXPECT_EQ(r.probability, 0.0);
    EXPECT_TRUE(r.state.is_zero());
    EXPECT_EQ(r.stages.size(), 4u);
}

TEST(Execute, RuntimeErrorsNameTheStep) {
    const auto ir = parse("mode 1 pol\nmode 3 pol\ninput 1H 1 3H 1\npbs 1 - -> 3 4");
    try {
        execute(ir);
        FAIL() << "expected ModeOccupied";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ModeOccupied);
        EXPECT_NE(std::string(e.what()).find("step 1 (line 4)"), std::string::npos) << e.what();
    }
}

TEST(Execute, Deterministic) {
    const auto ir = parse(noon_source(7));
    const auto a = execute(ir);
    const auto b = execute(ir);
    EXPECT_EQ(a.state.terms(), b.state.terms());
    EXPECT_EQ(a.probability, b.probability);
}

}  // namespace
}  // namespace noonlab::dsl
