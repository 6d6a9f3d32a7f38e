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
#include <utility>
#include <vector>

namespace noonlab::dsl {

/// Two-photon polarization entangler. Every angle is a named parameter:
/// theta_mix, theta_rot, theta_herald, theta_final.
std::string entangler_source();

/// One filter block acting on the binomial state that a symmetric splitter
/// makes from |total, 0>; the block angle is the parameter `theta`.
std::string filter_block_source(int total, const std::string& theta_expr);

/// NOON generator for `total_photons`, one parameter theta<k> per block.
std::string noon_source(int total_photons);

/// File name and text of every shipped preset.
std::vector<std::pair<std::string, std::string>> all_presets();

}  // namespace noonlab::dsl
