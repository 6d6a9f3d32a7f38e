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

#include "noonlab/detection.hpp"
#include "noonlab/dsl.hpp"

namespace noonlab::dsl {

ParamValues resolve_params(const CircuitIR& ir, const ParamValues& overrides) {
    for (const auto& [name, value] : overrides) {
        const bool known = std::any_of(ir.params.begin(), ir.params.end(),
                                       [&](const ParamDecl& p) { return p.name == name; });
        if (!known) throw Error(ErrorKind::InvalidArgument, "unknown parameter '" + name + "'");
    }
    ParamValues values;
    for (const auto& p : ir.params) {
        auto it = overrides.find(p.name);
        values[p.name] = it != overrides.end() ? it->second : evaluate_expression(p.expr, values);
    }
    return values;
}

ModeRegistry initial_registry(const CircuitIR& ir) {
    ModeRegistry registry;
    for (const auto& m : ir.modes) {
        if (m.polarized) {
            registry.add_polarized(m.label);
        } else {
            registry.add_scalar(m.label);
        }
    }
    return registry;
}

FockState initial_state(const CircuitIR& ir) {
    auto registry = initial_registry(ir);
    Occupation occ(registry.size(), 0);
    for (const auto& entry : ir.input) occ[registry.index_of(entry.mode)] = entry.count;
    return basis_state(registry, occ);
}

RunResult execute(const CircuitIR& ir, const ExecOptions& options) {
    return execute_from(ir, initial_state(ir), options);
}

RunResult execute_from(const CircuitIR& ir, const FockState& input, const ExecOptions& options) {
    const auto params = resolve_params(ir, options.overrides);
    RunResult result;
    auto state = input;
    if (options.trace) result.stages.push_back({"input", state});

    for (std::size_t i = 0; i < ir.steps.size(); ++i) {
        const auto& step = ir.steps[i];
        try {
            std::visit(
                [&](const auto& s) {
                    using T = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<T, BsStep>) {
                        state = apply_beam_splitter(state, s.mode_a, s.mode_c,
                                                    evaluate_expression(s.theta, params),
                                                    options.element.prune_eps);
                    } else if constexpr (std::is_same_v<T, RotStep>) {
                        state = apply_rotator(state, s.spatial, evaluate_expression(s.theta, params),
                                              options.element.prune_eps);
                    } else if constexpr (std::is_same_v<T, PbsStep>) {
                        state = apply_pbs(state, PolarizingBS{s.in1, s.in2, s.out1, s.out2},
                                          options.element.pbs_reflection_phase);
                    } else if constexpr (std::is_same_v<T, InjectStep>) {
                        state = inject_fock(state, s.mode, s.count);
                    } else {
                        auto herald = postselect(state, {{s.mode, s.count}});
                        result.probability *= herald.probability;
                        result.empty = result.empty || herald.empty;
                        state = std::move(herald.state);
                    }
                },
                step.op);
        } catch (const Error& e) {
            std::string where = "step " + std::to_string(i + 1);
            if (step.line > 0) where += " (line " + std::to_string(step.line) + ")";
            throw Error(e.kind(), where + ": " + e.what());
        }
        if (options.trace) result.stages.push_back({format_step(step.op), state});
        if (result.empty) break;
    }
    result.state = std::move(state);
    return result;
}

}  // namespace noonlab::dsl
