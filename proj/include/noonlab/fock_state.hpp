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

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noonlab/error.hpp"

namespace noonlab {

/// Largest photon count any single mode may hold.
inline constexpr int kPhotonCap = 64;
/// Amplitudes with modulus below this are dropped after every element.
inline constexpr double kDefaultPruneEps = 1e-14;
/// normalize() refuses states whose squared norm is below this.
inline constexpr double kZeroNormSquared = 1e-30;

using Amplitude = std::complex<double>;
/// Photon counts, one per registry mode, in registry order.
using Occupation = std::vector<int>;

enum class Polarization { None, H, V };

struct Mode {
    std::string label;
    /// Spatial path the mode belongs to; equals `label` for scalar modes.
    std::string spatial;
    Polarization pol = Polarization::None;

    bool operator==(const Mode&) const = default;
};

/// Ordered set of optical modes. Registration order is the canonical order of
/// occupation vectors. A polarized spatial path `s` contributes the two
/// adjacent modes `sH` and `sV`; both are always present together.
class ModeRegistry {
public:
    ModeRegistry() = default;

    /// Validates uniqueness of labels and completeness of polarization pairs.
    explicit ModeRegistry(std::vector<Mode> modes);

    ModeRegistry& add_scalar(std::string label);
    ModeRegistry& add_polarized(std::string spatial);

    std::size_t size() const noexcept { return modes_.size(); }
    bool empty() const noexcept { return modes_.empty(); }
    const std::vector<Mode>& modes() const noexcept { return modes_; }
    const Mode& mode(std::size_t i) const { return modes_.at(i); }
    std::vector<std::string> labels() const;

    std::optional<std::size_t> find(std::string_view label) const;
    /// Throws UnknownMode.
    std::size_t index_of(std::string_view label) const;
    bool contains(std::string_view label) const { return find(label).has_value(); }

    bool is_polarized(std::string_view spatial) const;
    /// Indices of (sH, sV). Throws UnknownMode or NotPolarized.
    std::pair<std::size_t, std::size_t> polarized_pair(std::string_view spatial) const;

    /// Copy with the given mode indices removed. A polarized partner left
    /// without its sibling becomes a scalar mode under the same label.
    ModeRegistry without(std::span<const std::size_t> indices) const;

    bool operator==(const ModeRegistry& other) const { return modes_ == other.modes_; }

    /// Throws OverlappingModes if any label appears in both.
    static ModeRegistry concat(const ModeRegistry& a, const ModeRegistry& b);

private:
    void check_new_label(const std::string& label) const;

    std::vector<Mode> modes_;
};

std::string polarized_label(std::string_view spatial, Polarization pol);

/// Sparse superposition of Fock basis vectors over one registry. Terms are
/// kept in lexicographic occupation order, so iteration and serialization
/// are deterministic. Values are immutable once built.
class FockState {
public:
    using Terms = std::map<Occupation, Amplitude>;

    FockState() = default;
    /// Zero state over `registry`.
    explicit FockState(ModeRegistry registry) : registry_(std::move(registry)) {}
    /// Validates every occupation against the registry and drops exact zeros.
    FockState(ModeRegistry registry, Terms terms);

    const ModeRegistry& registry() const noexcept { return registry_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Amplitude amplitude(const Occupation& occ) const;
    double squared_norm() const;
    double norm() const;

    /// Same registry, every amplitude multiplied by `factor`.
    FockState scaled(Amplitude factor) const;

private:
    ModeRegistry registry_;
    Terms terms_;
};

void validate_occupation(const ModeRegistry& registry, const Occupation& occ);
int total_photons(const Occupation& occ);

FockState basis_state(const ModeRegistry& registry, const Occupation& occ);

/// Duplicate occupations have their amplitudes summed; no normalization.
FockState superposition(const ModeRegistry& registry,
                        std::span<const std::pair<Occupation, Amplitude>> terms);
FockState superposition(const ModeRegistry& registry,
                        std::initializer_list<std::pair<Occupation, Amplitude>> terms);

/// <a|b>, conjugating `a`. Throws RegistryMismatch.
Amplitude inner_product(const FockState& a, const FockState& b);

/// Returns the unit-norm state and the original norm. Throws ZeroNorm.
std::pair<FockState, double> normalize(const FockState& state);

/// Product state over the concatenated registry. Throws OverlappingModes.
FockState tensor(const FockState& a, const FockState& b);

/// Drops every term with |amplitude| < eps.
FockState prune(const FockState& state, double eps);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const FockState& a, const FockState& b);

/// Rotates the global phase so the first nonzero amplitude (canonical order)
/// is real and positive.
FockState canonical_phase(const FockState& state);

/// Largest elementwise |a_i - e^{i phi} b_i| over the union of supports, with
/// phi chosen to align b onto a. Registries must match.
double max_deviation_up_to_phase(const FockState& a, const FockState& b);

/// Photon totals appearing in the state, ascending.
std::vector<int> photon_totals(const FockState& state);

/// Drops modes that are empty in every term.
FockState drop_vacuum_modes(const FockState& state);

}  // namespace noonlab
