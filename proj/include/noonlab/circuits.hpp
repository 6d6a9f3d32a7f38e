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

#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noonlab/detection.hpp"
#include "noonlab/elements.hpp"
#include "noonlab/fock_state.hpp"

// Heralded linear-optics constructions: the two-ancilla filter block, the
// polarization singlet source and the NOON-state generator, together with
// the closed-form amplitude and probability laws they are checked against.
namespace noonlab::circuits {

struct BlockResult {
    FockState state;
    double probability = 0.0;
    double theta = 0.0;
    bool empty = false;
};

/// Conditional amplitude multiplier for |n, N-n> through one filter block:
///   cos^(N-2)(theta) (cos^2 - n sin^2)(cos^2 - (N-n) sin^2).
double block_amplitude_factor(int n, int total, double theta);

/// Adds one photon to a fresh ancilla next to each of `mode_a` and `mode_b`,
/// mixes each pair on a beam splitter at `theta`, and keeps the branch with
/// exactly one photon in each ancilla output.
BlockResult theta_block(const FockState& state, const std::string& mode_a,
                        const std::string& mode_b, double theta);

enum class AngleRule {
    /// theta = atan(1/sqrt(i)): the zero of cos^2 - i sin^2.
    ZeroFactor,
    /// theta = atan(sqrt(i)). Kept for comparison runs only; it does not
    /// delete the targeted terms for i >= 2.
    RootTarget,
};

/// Block angle that removes occupation `i` (and its mirror). Throws
/// InvalidDeletionTarget for i < 1.
double deletion_angle(int i, AngleRule rule = AngleRule::ZeroFactor);

/// Amplitudes of |2N-2m, 2m> (m = 0..N) produced by a symmetric splitter fed
/// with |N, N>.
std::vector<double> balanced_splitter_coefficients(int n);

struct NoonPlan {
    int total_photons = 0;
    std::pair<int, int> input{0, 0};
    /// Occupation deleted by each block, in application order.
    std::vector<int> deleted_occupations;
    std::vector<double> block_angles;
    int blocks() const { return static_cast<int>(block_angles.size()); }
};

/// Throws InvalidArgument for P < 2.
NoonPlan noon_plan(int total_photons, AngleRule rule = AngleRule::ZeroFactor);

struct NoonResult {
    FockState state;
    double probability = 0.0;
    NoonPlan plan;
    /// Per-block heralding probabilities.
    std::vector<double> block_probabilities;
};

/// Runs a plan on modes "a" and "b". The plan's block order is honored, so
/// permuted plans can be compared against the default ordering.
NoonResult run_noon_plan(const NoonPlan& plan);
NoonResult noon_circuit(int total_photons);

/// Heralding probability of the NOON generator from the closed-form laws,
/// evaluated in log space. P = 2 returns 1.
double noon_probability_closed_form(int total_photons);

/// n!! with (-1)!! = 0!! = 1, in log space.
double log_double_factorial(int n);

struct Stage {
    std::string name;
    FockState state;
};

struct EntanglerOptions {
    /// Polarization of the injected ancilla photons. V is the only choice
    /// that interferes with the V-only arms; H is kept for comparison.
    Polarization ancilla = Polarization::V;
    /// Defaults to acos(sqrt(1/3)).
    std::optional<double> rotator_theta;
    double herald_bs_theta = std::numbers::pi / 4.0;
    double final_rotator_theta = std::numbers::pi / 4.0;
};

struct EntanglerResult {
    FockState state;
    double probability = 0.0;
    std::vector<Stage> trace;
};

/// Two-photon polarization entangler fed with |H>_1 |H>_2. The trace holds
/// the state after each stage (mixed, rotated, split, heralded, merged,
/// analyzed, output); the returned state lives on the two output paths "A" and "B".
EntanglerResult two_photon_entangler(const EntanglerOptions& options = {});

/// (|H>_A|V>_B - |V>_A|H>_B)/sqrt(2) over the entangler's output registry.
FockState singlet_target();

}  // namespace noonlab::circuits
