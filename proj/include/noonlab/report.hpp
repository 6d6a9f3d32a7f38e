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

#include <string>
#include <vector>

#include "noonlab/circuits.hpp"
#include "noonlab/fock_state.hpp"

// Serialization of run results. JSON objects are emitted with sorted keys
// and terms in canonical occupation order, so equal inputs give equal bytes.
namespace noonlab::report {

struct Conventions {
    double prune_eps = kDefaultPruneEps;
    Amplitude pbs_reflection_phase{1.0, 0.0};
};

struct Document {
    FockState state;
    double probability = 1.0;
    bool empty = false;
    std::vector<circuits::Stage> stages;
    bool include_stages = false;
    Conventions conventions;
};

std::string to_json(const Document& doc);

/// Comment line with the probability, a header of mode labels plus re,im,
/// then one row per term. Stages follow as further commented blocks.
std::string to_csv(const Document& doc);

/// %.17g formatting used for every real written by the tools.
std::string format_real(double x);

/// |<target|state>|^2 / (|target|^2 |state|^2) with modes matched by label.
/// Terms of `state` that occupy modes absent from `target` have no overlap.
double labelled_fidelity(const FockState& state, const FockState& target);

}  // namespace noonlab::report
