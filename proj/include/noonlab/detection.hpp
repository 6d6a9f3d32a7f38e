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
#include <string>
#include <vector>

#include "noonlab/fock_state.hpp"

namespace noonlab {

/// Exact photon counts required at photon-number-resolving detectors.
using DetectionPattern = std::map<std::string, int>;

struct PostselectResult {
    /// Normalized conditional state over the registry minus the detector
    /// modes; the zero state when `empty`.
    FockState state;
    /// Squared norm of the component matching the pattern.
    double probability = 0.0;
    bool empty = false;
};

PostselectResult postselect(const FockState& state, const DetectionPattern& pattern);

/// Outcome probabilities keyed by the counts at `detector_modes` (in the
/// order given). Sums to the squared norm of `state`.
std::map<std::vector<int>, double> outcome_distribution(const FockState& state,
                                                        const std::vector<std::string>& detector_modes);

}  // namespace noonlab
