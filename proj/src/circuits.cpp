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

#include "noonlab/circuits.hpp"

#include <cmath>
#include <numbers>

namespace noonlab::circuits {
namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::string fresh_label(const ModeRegistry& registry, const std::string& stem) {
    for (int k = 0;; ++k) {
        auto label = stem + std::to_string(k);
        if (!registry.contains(label) && !registry.is_polarized(label)) return label;
    }
}

}  // namespace

double block_amplitude_factor(int n, int total, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double c2 = c * c;
    const double s2 = s * s;
    return std::pow(c, total - 2) * (c2 - n * s2) * (c2 - (total - n) * s2);
}

BlockResult theta_block(const FockState& state, const std::string& mode_a,
                        const std::string& mode_b, double theta) {
    const auto anc_a = fresh_label(state.registry(), "anc_");
    auto work = inject_fock(state, anc_a, 1);
    const auto anc_b = fresh_label(work.registry(), "anc_");
    work = inject_fock(work, anc_b, 1);
    work = apply_beam_splitter(work, mode_a, anc_a, theta);
    work = apply_beam_splitter(work, mode_b, anc_b, theta);
    auto herald = postselect(work, {{anc_a, 1}, {anc_b, 1}});
    return BlockResult{std::move(herald.state), herald.probability, theta, herald.empty};
}

double deletion_angle(int i, AngleRule rule) {
    if (i < 1) {
        throw Error(ErrorKind::InvalidDeletionTarget,
                    "deletion target must be >= 1, got " + std::to_string(i));
    }
    const double root = std::sqrt(static_cast<double>(i));
    return rule == AngleRule::ZeroFactor ? std::atan(1.0 / root) : std::atan(root);
}

std::vector<double> balanced_splitter_coefficients(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "balanced splitter needs N >= 1");
    std::vector<double> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        const double log_mag = 0.5 * (log_factorial(2 * m) + log_factorial(2 * n - 2 * m)) -
                               log_factorial(m) - log_factorial(n - m) - n * std::log(2.0);
        coeffs.push_back((m % 2 == 0 ? 1.0 : -1.0) * std::exp(log_mag));
    }
    return coeffs;
}

NoonPlan noon_plan(int total_photons, AngleRule rule) {
    if (total_photons < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "NOON generation needs at least 2 photons, got " + std::to_string(total_photons));
    }
    NoonPlan plan;
    plan.total_photons = total_photons;
    if (total_photons % 2 == 0) {
        const int half = total_photons / 2;
        plan.input = {half, half};
        // Only even occupations survive the first splitter.
        const int blocks = half % 2 == 0 ? half / 2 : (half - 1) / 2;
        for (int i = 1; i <= blocks; ++i) {
            plan.deleted_occupations.push_back(2 * i);
            plan.block_angles.push_back(deletion_angle(2 * i, rule));
        }
    } else {
        const int half = (total_photons - 1) / 2;
        plan.input = {total_photons, 0};
        for (int i = 1; i <= half; ++i) {
            plan.deleted_occupations.push_back(i);
            plan.block_angles.push_back(deletion_angle(i, rule));
        }
    }
    return plan;
}

NoonResult run_noon_plan(const NoonPlan& plan) {
    ModeRegistry registry;
    registry.add_scalar("a").add_scalar("b");
    auto state = basis_state(registry, {plan.input.first, plan.input.second});
    state = apply_beam_splitter(state, "a", "b", kQuarterPi);

    NoonResult result;
    result.plan = plan;
    result.probability = 1.0;
    for (double theta : plan.block_angles) {
        auto block = theta_block(state, "a", "b", theta);
        result.block_probabilities.push_back(block.probability);
        result.probability *= block.probability;
        state = std::move(block.state);
        if (block.empty) break;
    }
    result.state = std::move(state);
    return result;
}

NoonResult noon_circuit(int total_photons) { return run_noon_plan(noon_plan(total_photons)); }

double log_double_factorial(int n) {
    double s = 0.0;
    for (int k = n; k > 1; k -= 2) s += std::log(static_cast<double>(k));
    return s;
}

double noon_probability_closed_form(int total_photons) {
    if (total_photons < 2) {
        throw Error(ErrorKind::InvalidArgument, "NOON probability needs P >= 2");
    }
    if (total_photons == 2) return 1.0;
    const double ln2 = std::log(2.0);
    double log_p = 0.0;
    if (total_photons % 2 == 1) {
        const int n = (total_photons - 1) / 2;
        log_p = 2.0 * log_factorial(2 * n) - n * std::log(4.0) -
                (2 * n + 1) * std::log(static_cast<double>(n + 1)) -
                2.0 * (log_factorial(n) + log_factorial(n + 1));
    } else if (const int n = total_photons / 2; n % 2 == 1) {
        log_p = log_factorial(2 * n) + 2.0 * log_double_factorial(2 * n - 2) +
                2.0 * n * log_double_factorial(n - 1) - (2 * n - 1) * ln2 -
                4.0 * log_factorial(n) - 2.0 * n * log_double_factorial(n);
    } else {
        log_p = log_factorial(2 * n) + 2.0 * log_double_factorial(2 * n - 2) +
                2.0 * n * log_double_factorial(n) - (2 * n - 1) * ln2 -
                2.0 * log_factorial(n - 1) - 2.0 * log_factorial(n + 1) -
                2.0 * n * log_double_factorial(n + 1);
    }
    return std::exp(log_p);
}

EntanglerResult two_photon_entangler(const EntanglerOptions& options) {
    const double rotator = options.rotator_theta.value_or(std::acos(std::sqrt(1.0 / 3.0)));
    const char* arm_mode_4 = options.ancilla == Polarization::H ? "4H" : "4V";
    const char* arm_mode_6 = options.ancilla == Polarization::H ? "6H" : "6V";

    EntanglerResult result;
    ModeRegistry registry;
    registry.add_polarized("1").add_polarized("2");
    auto state = basis_state(registry, {1, 0, 1, 0});

    state = apply_beam_splitter(state, "1H", "2H", kQuarterPi);
    result.trace.push_back({"mixed", state});

    state = apply_rotator(state, "1", rotator);
    state = apply_rotator(state, "2", rotator);
    result.trace.push_back({"rotated", state});

    state = apply_pbs(state, {"1", std::nullopt, "3", "4"});
    state = apply_pbs(state, {"2", std::nullopt, "5", "6"});
    result.trace.push_back({"split", state});

    state = inject_fock(state, "D1", 1);
    state = inject_fock(state, "D2", 1);
    state = apply_beam_splitter(state, arm_mode_4, "D1", options.herald_bs_theta);
    state = apply_beam_splitter(state, arm_mode_6, "D2", options.herald_bs_theta);
    auto herald = postselect(state, {{"D1", 1}, {"D2", 1}});
    result.probability = herald.probability;
    state = std::move(herald.state);
    result.trace.push_back({"heralded", state});
    if (herald.empty) {
        result.state = state;
        return result;
    }

    // Whatever H light is left in arm 4 or 6 (only with H ancillas) would hit
    // a discarded port, so those arms are merged with both outputs kept.
    const bool clean = options.ancilla == Polarization::V;
    state = apply_pbs(state, {"3", std::string("4"), "7", clean ? std::nullopt : std::optional<std::string>("X7")});
    state = apply_pbs(state, {"5", std::string("6"), "8", clean ? std::nullopt : std::optional<std::string>("X8")});
    result.trace.push_back({"merged", state});

    state = apply_rotator(state, "7", options.final_rotator_theta);
    state = apply_rotator(state, "8", options.final_rotator_theta);
    result.trace.push_back({"analyzed", state});

    state = apply_pbs(state, {"7", std::string("8"), "A", "B"});
    result.trace.push_back({"output", state});
    result.state = std::move(state);
    return result;
}

FockState singlet_target() {
    ModeRegistry registry;
    registry.add_polarized("A").add_polarized("B");
    const double r = 1.0 / std::sqrt(2.0);
    return superposition(registry, {{{1, 0, 0, 1}, r}, {{0, 1, 1, 0}, -r}});
}

}  // namespace noonlab::circuits
