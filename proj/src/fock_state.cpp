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

#include "noonlab/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace noonlab {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NegativeOccupation: return "NegativeOccupation";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::RegistryMismatch: return "RegistryMismatch";
        case ErrorKind::DuplicateMode: return "DuplicateMode";
        case ErrorKind::UnknownMode: return "UnknownMode";
        case ErrorKind::OverlappingModes: return "OverlappingModes";
        case ErrorKind::IdenticalModes: return "IdenticalModes";
        case ErrorKind::NotPolarized: return "NotPolarized";
        case ErrorKind::ModeOccupied: return "ModeOccupied";
        case ErrorKind::PhotonCapExceeded: return "PhotonCapExceeded";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::ZeroNorm: return "ZeroNorm";
        case ErrorKind::InvalidDeletionTarget: return "InvalidDeletionTarget";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::SectorTooLarge: return "SectorTooLarge";
    }
    return "Unknown";
}

std::string polarized_label(std::string_view spatial, Polarization pol) {
    std::string out(spatial);
    if (pol == Polarization::H) out += 'H';
    if (pol == Polarization::V) out += 'V';
    return out;
}

// ---------------------------------------------------------------------------
// ModeRegistry

ModeRegistry::ModeRegistry(std::vector<Mode> modes) {
    for (auto& m : modes) {
        check_new_label(m.label);
        if (m.pol == Polarization::None) {
            m.spatial = m.label;
        } else if (m.label != polarized_label(m.spatial, m.pol)) {
            throw Error(ErrorKind::InvalidArgument,
                        "polarized mode label '" + m.label + "' does not match spatial '" +
                            m.spatial + "'");
        }
        modes_.push_back(std::move(m));
    }
    for (const auto& m : modes_) {
        if (m.pol == Polarization::None) continue;
        const auto partner = m.pol == Polarization::H ? Polarization::V : Polarization::H;
        auto it = std::find_if(modes_.begin(), modes_.end(), [&](const Mode& o) {
            return o.spatial == m.spatial && o.pol == partner;
        });
        if (it == modes_.end()) {
            throw Error(ErrorKind::InvalidArgument,
                        "polarized path '" + m.spatial + "' is missing its partner mode");
        }
    }
}

void ModeRegistry::check_new_label(const std::string& label) const {
    if (label.empty()) throw Error(ErrorKind::InvalidArgument, "empty mode label");
    if (find(label)) throw Error(ErrorKind::DuplicateMode, "duplicate mode '" + label + "'");
}

ModeRegistry& ModeRegistry::add_scalar(std::string label) {
    check_new_label(label);
    for (const auto& m : modes_) {
        if (m.pol != Polarization::None && m.spatial == label) {
            throw Error(ErrorKind::DuplicateMode, "mode '" + label + "' is a polarized path");
        }
    }
    modes_.push_back(Mode{label, label, Polarization::None});
    return *this;
}

ModeRegistry& ModeRegistry::add_polarized(std::string spatial) {
    if (spatial.empty()) throw Error(ErrorKind::InvalidArgument, "empty mode label");
    const auto h = polarized_label(spatial, Polarization::H);
    const auto v = polarized_label(spatial, Polarization::V);
    check_new_label(h);
    check_new_label(v);
    if (find(spatial)) {
        throw Error(ErrorKind::DuplicateMode, "duplicate mode '" + spatial + "'");
    }
    modes_.push_back(Mode{h, spatial, Polarization::H});
    modes_.push_back(Mode{v, spatial, Polarization::V});
    return *this;
}

std::vector<std::string> ModeRegistry::labels() const {
    std::vector<std::string> out;
    out.reserve(modes_.size());
    for (const auto& m : modes_) out.push_back(m.label);
    return out;
}

std::optional<std::size_t> ModeRegistry::find(std::string_view label) const {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].label == label) return i;
    }
    return std::nullopt;
}

std::size_t ModeRegistry::index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw Error(ErrorKind::UnknownMode, "unregistered mode '" + std::string(label) + "'");
}

bool ModeRegistry::is_polarized(std::string_view spatial) const {
    return std::any_of(modes_.begin(), modes_.end(), [&](const Mode& m) {
        return m.pol != Polarization::None && m.spatial == spatial;
    });
}

std::pair<std::size_t, std::size_t> ModeRegistry::polarized_pair(std::string_view spatial) const {
    std::optional<std::size_t> h, v;
    bool seen = false;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (modes_[i].spatial != spatial) continue;
        seen = true;
        if (modes_[i].pol == Polarization::H) h = i;
        if (modes_[i].pol == Polarization::V) v = i;
    }
    if (!seen) {
        throw Error(ErrorKind::UnknownMode, "unregistered path '" + std::string(spatial) + "'");
    }
    if (!h || !v) {
        throw Error(ErrorKind::NotPolarized,
                    "path '" + std::string(spatial) + "' has no polarization modes");
    }
    return {*h, *v};
}

ModeRegistry ModeRegistry::without(std::span<const std::size_t> indices) const {
    std::set<std::size_t> drop(indices.begin(), indices.end());
    std::vector<Mode> kept;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (!drop.count(i)) kept.push_back(modes_[i]);
    }
    for (auto& m : kept) {
        if (m.pol == Polarization::None) continue;
        const auto partner = m.pol == Polarization::H ? Polarization::V : Polarization::H;
        const bool has_partner = std::any_of(kept.begin(), kept.end(), [&](const Mode& o) {
            return o.spatial == m.spatial && o.pol == partner;
        });
        if (!has_partner) m = Mode{m.label, m.label, Polarization::None};
    }
    return ModeRegistry(std::move(kept));
}

ModeRegistry ModeRegistry::concat(const ModeRegistry& a, const ModeRegistry& b) {
    for (const auto& m : b.modes_) {
        if (a.find(m.label)) {
            throw Error(ErrorKind::OverlappingModes, "mode '" + m.label + "' appears in both");
        }
    }
    std::vector<Mode> all = a.modes_;
    all.insert(all.end(), b.modes_.begin(), b.modes_.end());
    return ModeRegistry(std::move(all));
}

// ---------------------------------------------------------------------------
// FockState

void validate_occupation(const ModeRegistry& registry, const Occupation& occ) {
    if (occ.size() != registry.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    "occupation has " + std::to_string(occ.size()) + " entries, registry has " +
                        std::to_string(registry.size()));
    }
    for (int n : occ) {
        if (n < 0) throw Error(ErrorKind::NegativeOccupation, "negative photon count");
        if (n > kPhotonCap) {
            throw Error(ErrorKind::PhotonCapExceeded,
                        "photon count " + std::to_string(n) + " exceeds cap");
        }
    }
}

int total_photons(const Occupation& occ) { return std::accumulate(occ.begin(), occ.end(), 0); }

FockState::FockState(ModeRegistry registry, Terms terms) : registry_(std::move(registry)) {
    for (auto& [occ, amp] : terms) {
        validate_occupation(registry_, occ);
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw Error(ErrorKind::NonFinite, "non-finite amplitude");
        }
        if (amp != Amplitude{}) terms_.emplace(occ, amp);
    }
}

Amplitude FockState::amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Amplitude{} : it->second;
}

double FockState::squared_norm() const {
    double s = 0.0;
    for (const auto& [occ, amp] : terms_) s += std::norm(amp);
    return s;
}

double FockState::norm() const { return std::sqrt(squared_norm()); }

FockState FockState::scaled(Amplitude factor) const {
    Terms out;
    for (const auto& [occ, amp] : terms_) out.emplace(occ, amp * factor);
    return FockState(registry_, std::move(out));
}

FockState basis_state(const ModeRegistry& registry, const Occupation& occ) {
    return FockState(registry, {{occ, Amplitude{1.0, 0.0}}});
}

FockState superposition(const ModeRegistry& registry,
                        std::span<const std::pair<Occupation, Amplitude>> terms) {
    FockState::Terms merged;
    for (const auto& [occ, amp] : terms) {
        validate_occupation(registry, occ);
        merged[occ] += amp;
    }
    return FockState(registry, std::move(merged));
}

FockState superposition(const ModeRegistry& registry,
                        std::initializer_list<std::pair<Occupation, Amplitude>> terms) {
    return superposition(registry, std::span(terms.begin(), terms.size()));
}

Amplitude inner_product(const FockState& a, const FockState& b) {
    if (!(a.registry() == b.registry())) {
        throw Error(ErrorKind::RegistryMismatch, "inner product over different registries");
    }
    Amplitude s{};
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    for (const auto& [occ, amp] : small.terms()) {
        auto it = large.terms().find(occ);
        if (it == large.terms().end()) continue;
        s += &small == &a ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return s;
}

std::pair<FockState, double> normalize(const FockState& state) {
    const double sq = state.squared_norm();
    if (sq < kZeroNormSquared) throw Error(ErrorKind::ZeroNorm, "cannot normalize a zero state");
    const double n = std::sqrt(sq);
    return {state.scaled(1.0 / n), n};
}

FockState tensor(const FockState& a, const FockState& b) {
    auto registry = ModeRegistry::concat(a.registry(), b.registry());
    FockState::Terms out;
    for (const auto& [oa, xa] : a.terms()) {
        for (const auto& [ob, xb] : b.terms()) {
            Occupation occ = oa;
            occ.insert(occ.end(), ob.begin(), ob.end());
            out.emplace(std::move(occ), xa * xb);
        }
    }
    return FockState(std::move(registry), std::move(out));
}

FockState prune(const FockState& state, double eps) {
    if (eps < 0.0) throw Error(ErrorKind::InvalidArgument, "negative prune threshold");
    FockState::Terms out;
    for (const auto& [occ, amp] : state.terms()) {
        if (std::abs(amp) >= eps) out.emplace(occ, amp);
    }
    return FockState(state.registry(), std::move(out));
}

double fidelity(const FockState& a, const FockState& b) {
    const double na = a.squared_norm();
    const double nb = b.squared_norm();
    if (na < kZeroNormSquared || nb < kZeroNormSquared) return 0.0;
    return std::norm(inner_product(a, b)) / (na * nb);
}

FockState canonical_phase(const FockState& state) {
    if (state.is_zero()) return state;
    const Amplitude first = state.terms().begin()->second;
    return state.scaled(std::conj(first) / std::abs(first));
}

double max_deviation_up_to_phase(const FockState& a, const FockState& b) {
    const Amplitude overlap = inner_product(b, a);
    const Amplitude phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Amplitude{1.0};
    double worst = 0.0;
    for (const auto& [occ, amp] : a.terms()) {
        worst = std::max(worst, std::abs(amp - phase * b.amplitude(occ)));
    }
    for (const auto& [occ, amp] : b.terms()) {
        if (!a.terms().count(occ)) worst = std::max(worst, std::abs(amp));
    }
    return worst;
}

std::vector<int> photon_totals(const FockState& state) {
    std::set<int> totals;
    for (const auto& [occ, amp] : state.terms()) totals.insert(total_photons(occ));
    return {totals.begin(), totals.end()};
}

FockState drop_vacuum_modes(const FockState& state) {
    std::vector<std::size_t> empty;
    for (std::size_t i = 0; i < state.registry().size(); ++i) {
        const bool vacuum = std::all_of(state.terms().begin(), state.terms().end(),
                                        [&](const auto& t) { return t.first[i] == 0; });
        if (vacuum) empty.push_back(i);
    }
    if (empty.empty()) return state;
    auto registry = state.registry().without(empty);
    FockState::Terms out;
    for (const auto& [occ, amp] : state.terms()) {
        Occupation kept;
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (!std::binary_search(empty.begin(), empty.end(), i)) kept.push_back(occ[i]);
        }
        out.emplace(std::move(kept), amp);
    }
    return FockState(std::move(registry), std::move(out));
}

}  // namespace noonlab
