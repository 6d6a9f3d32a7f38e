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

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "noonlab/circuits.hpp"
#include "noonlab/elements.hpp"
#include "noonlab/fock_state.hpp"

// Line-oriented circuit description language (.circ files).
//
//   # comment
//   mode <label> [pol]                  scalar mode, or path with <label>H/<label>V
//   param <name> = <expr>               named angle, overridable at run time
//   input <label> <n> [<label> <n> ...] initial product Fock state (at most once)
//   bs <m1> <m2> theta=<expr>
//   rot <path> theta=<expr>
//   pbs <in1> <in2> -> <out1> <out2>    '-' marks an absent input or a dropped output
//   inject <label> <n>
//   detect <label> = <n>
//
// Angle expressions accept numbers, pi, parameter names, + - * /,
// parentheses and sqrt, sin, cos, tan, asin, acos, atan.
namespace noonlab::dsl {

enum class ParseErrorKind { Syntax, UnknownDirective, UndeclaredMode, DuplicateMode, Semantic };

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, int line, int column, const std::string& message);

    ParseErrorKind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    ParseErrorKind kind_;
    int line_;
    int column_;
    std::string message_;
};

struct ModeDecl {
    std::string label;
    bool polarized = false;
    bool operator==(const ModeDecl&) const = default;
};

struct ParamDecl {
    std::string name;
    std::string expr;
    bool operator==(const ParamDecl&) const = default;
};

struct InputEntry {
    std::string mode;
    int count = 0;
    bool operator==(const InputEntry&) const = default;
};

struct BsStep {
    std::string mode_a;
    std::string mode_c;
    std::string theta;
    bool operator==(const BsStep&) const = default;
};

struct RotStep {
    std::string spatial;
    std::string theta;
    bool operator==(const RotStep&) const = default;
};

struct PbsStep {
    std::string in1;
    std::optional<std::string> in2;
    std::optional<std::string> out1;
    std::optional<std::string> out2;
    bool operator==(const PbsStep&) const = default;
};

struct InjectStep {
    std::string mode;
    int count = 0;
    bool operator==(const InjectStep&) const = default;
};

struct DetectStep {
    std::string mode;
    int count = 0;
    bool operator==(const DetectStep&) const = default;
};

using StepOp = std::variant<BsStep, RotStep, PbsStep, InjectStep, DetectStep>;

struct Step {
    StepOp op;
    /// Source line, 0 for programmatically built steps. Not part of equality.
    int line = 0;
    bool operator==(const Step& other) const { return op == other.op; }
};

struct CircuitIR {
    std::vector<ModeDecl> modes;
    std::vector<ParamDecl> params;
    std::vector<InputEntry> input;
    std::vector<Step> steps;
    bool operator==(const CircuitIR&) const = default;
};

using ParamValues = std::map<std::string, double>;

/// Evaluates an angle expression. Unknown identifiers and malformed input
/// raise ParseError with line 1 and the column inside `expr`.
double evaluate_expression(std::string_view expr, const ParamValues& params);

/// Parses and validates; throws the first ParseError.
CircuitIR parse(std::string_view source);

/// Canonical text: modes, params, input, then steps. Reparses to an equal IR.
std::string pretty_print(const CircuitIR& ir);
std::string format_step(const StepOp& op);

/// Parameter values after applying `overrides`. Throws noonlab::Error
/// (InvalidArgument) for overrides naming unknown parameters.
ParamValues resolve_params(const CircuitIR& ir, const ParamValues& overrides = {});

ModeRegistry initial_registry(const CircuitIR& ir);
FockState initial_state(const CircuitIR& ir);

struct ExecOptions {
    ParamValues overrides;
    bool trace = false;
    ElementOptions element;
};

struct RunResult {
    FockState state;
    /// Product of the heralding probabilities of all detection steps.
    double probability = 1.0;
    /// Set when some detection had zero probability; `state` is then zero.
    bool empty = false;
    std::vector<circuits::Stage> stages;
};

RunResult execute(const CircuitIR& ir, const ExecOptions& options = {});

/// Runs the steps of `ir` on an explicit initial state, ignoring the IR's
/// own mode and input declarations.
RunResult execute_from(const CircuitIR& ir, const FockState& input, const ExecOptions& options = {});

}  // namespace noonlab::dsl
