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

#include "noonlab/detection.hpp"

#include <algorithm>
#include <cmath>

namespace noonlab {

PostselectResult postselect(const FockState& state, const DetectionPattern& pattern) {
    const auto& registry = state.registry();
    std::vector<std::pair<std::size_t, int>> wanted;
    std::vector<std::size_t> detector_indices;
    for (const auto& [label, count] : pattern) {
        if (count < 0) throw Error(ErrorKind::NegativeOccupation, "negative detection count");
        const auto idx = registry.index_of(label);
        wanted.emplace_back(idx, count);
        detector_indices.push_back(idx);
    }
    std::sort(detector_indices.begin(), detector_indices.end());

    auto reduced = registry.without(detector_indices);
    FockState::Terms kept;
    double probability = 0.0;
    for (const auto& [occ, amp] : state.terms()) {
        const bool match = std::all_of(wanted.begin(), wanted.end(),
                                       [&](const auto& w) { return occ[w.first] == w.second; });
        if (!match) continue;
        Occupation rest;
        rest.reserve(occ.size() - detector_indices.size());
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (!std::binary_search(detector_indices.begin(), detector_indices.end(), i)) {
                rest.push_back(occ[i]);
            }
        }
        probability += std::norm(amp);
        kept[std::move(rest)] += amp;
    }

    PostselectResult result;
    if (probability < kZeroNormSquared) {
        result.state = FockState(std::move(reduced));
        result.probability = 0.0;
        result.empty = true;
        return result;
    }
    const double scale = 1.0 / std::sqrt(probability);
    for (auto& [occ, amp] : kept) amp *= scale;
    result.state = FockState(std::move(reduced), std::move(kept));
    result.probability = probability;
    return result;
}

std::map<std::vector<int>, double> outcome_distribution(const FockState& state,
                                                        const std::vector<std::string>& detector_modes) {
    std::vector<std::size_t> idx;
    idx.reserve(detector_modes.size());
    for (const auto& label : detector_modes) idx.push_back(state.registry().index_of(label));
    std::map<std::vector<int>, double> dist;
    for (const auto& [occ, amp] : state.terms()) {
        std::vector<int> key;
        key.reserve(idx.size());
        for (auto i : idx) key.push_back(occ[i]);
        dist[key] += std::norm(amp);
    }
    if (idx.empty() && dist.empty()) dist[{}] = 0.0;
    return dist;
}

}  // namespace noonlab
