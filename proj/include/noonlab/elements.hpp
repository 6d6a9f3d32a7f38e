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

#include <optional>
#include <string>
#include <variant>

#include "noonlab/fock_state.hpp"

namespace noonlab {

/// Two-mode beam splitter acting on creation operators as
///   a+ -> cos(theta) a+ + sin(theta) c+
///   c+ -> cos(theta) c+ - sin(theta) a+
/// theta = pi/4 is the symmetric (50/50) splitter.
struct BeamSplitter {
    std::string mode_a;
    std::string mode_c;
    double theta = 0.0;
};

/// Same substitution as BeamSplitter on the (H, V) pair of one path.
struct Rotator {
    std::string spatial;
    double theta = 0.0;
};

/// Transmits H and reflects V:
///   in1.H -> out1.H   in1.V -> out2.V
///   in2.H -> out2.H   in2.V -> out1.V
/// An absent input is vacuum. An absent output is a discarded port that must
/// receive no photons.
struct PolarizingBS {
    std::string in1;
    std::optional<std::string> in2;
    std::optional<std::string> out1;
    std::optional<std::string> out2;
};

/// Adjoins |n> in a fresh mode, or in a registered mode that is empty in
/// every term.
struct Inject {
    std::string mode;
    int count = 1;
};

using ElementSpec = std::variant<BeamSplitter, Rotator, PolarizingBS, Inject>;

struct ElementOptions {
    double prune_eps = kDefaultPruneEps;
    /// Phase picked up per reflected (V) photon at a PBS.
    Amplitude pbs_reflection_phase{1.0, 0.0};
};

FockState apply_beam_splitter(const FockState& state, std::string_view mode_a,
                              std::string_view mode_c, double theta,
                              double prune_eps = kDefaultPruneEps);

FockState apply_rotator(const FockState& state, std::string_view spatial, double theta,
                        double prune_eps = kDefaultPruneEps);

FockState apply_pbs(const FockState& state, const PolarizingBS& pbs,
                    Amplitude reflection_phase = Amplitude{1.0, 0.0});

FockState inject_fock(const FockState& state, std::string_view mode, int count);

FockState apply(const FockState& state, const ElementSpec& element,
                const ElementOptions& options = {});

/// Registry a PBS produces from `registry`; shared by the sparse engine and
/// the dense oracle so both agree on output mode order.
struct PbsLayout {
    ModeRegistry registry;
    // Index in the new registry (or -1 when discarded) for each routed input.
    int in1_h = -1, in1_v = -1, in2_h = -1, in2_v = -1;
    // Old-index -> new-index for the modes the PBS does not touch.
    std::vector<std::pair<std::size_t, std::size_t>> passthrough;
    // Source indices in the old registry (in2 ones are -1 when absent).
    int src_in1_h = -1, src_in1_v = -1, src_in2_h = -1, src_in2_v = -1;
};

PbsLayout pbs_layout(const ModeRegistry& registry, const PolarizingBS& pbs);

}  // namespace noonlab
