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

#include "noonlab/elements.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

namespace noonlab {
namespace {

using BinomialTable = std::array<std::array<std::uint64_t, kPhotonCap + 1>, kPhotonCap + 1>;

// Pascal's triangle up to the photon cap; C(64, 32) still fits in 64 bits.
const BinomialTable& binomials() {
    static const BinomialTable table = [] {
        BinomialTable t{};
        for (int n = 0; n <= kPhotonCap; ++n) {
            t[n][0] = t[n][n] = 1;
            for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
        return t;
    }();
    return table;
}

const std::array<double, kPhotonCap + 1>& log_factorials() {
    static const auto table = [] {
        std::array<double, kPhotonCap + 1> t{};
        for (int n = 0; n <= kPhotonCap; ++n) t[n] = std::lgamma(static_cast<double>(n) + 1.0);
        return t;
    }();
    return table;
}

std::vector<double> powers(double x, int count) {
    std::vector<double> p(static_cast<std::size_t>(count) + 1, 1.0);
    for (int i = 1; i <= count; ++i) p[i] = p[i - 1] * x;
    return p;
}

void check_theta(double theta) {
    if (!std::isfinite(theta)) throw Error(ErrorKind::NonFinite, "non-finite element angle");
}

FockState beam_splitter_by_index(const FockState& state, std::size_t ia, std::size_t ic,
                                 double theta, double prune_eps) {
    check_theta(theta);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto& binom = binomials();
    const auto& lf = log_factorials();

    int max_pair = 0;
    for (const auto& [occ, amp] : state.terms()) max_pair = std::max(max_pair, occ[ia] + occ[ic]);
    if (max_pair > kPhotonCap) {
        throw Error(ErrorKind::PhotonCapExceeded, "beam splitter output would exceed photon cap");
    }
    const auto cp = powers(c, max_pair);
    const auto sp = powers(s, max_pair);

    // Each term is (a+)^n (c+)^m / sqrt(n! m!) |0>. Substituting and expanding
    // both binomials gives a+^(k + m - l) c+^(n - k + l) with coefficient
    // C(n,k) C(m,l) c^(k+l) s^(n-k) (-s)^(m-l).
    FockState::Terms out;
    for (const auto& [occ, amp] : state.terms()) {
        const int n = occ[ia];
        const int m = occ[ic];
        for (int k = 0; k <= n; ++k) {
            for (int l = 0; l <= m; ++l) {
                const int na = k + (m - l);
                const int nc = (n - k) + l;
                const double sign = ((m - l) % 2 == 0) ? 1.0 : -1.0;
                const double trig = cp[k + l] * sp[n - k] * sp[m - l] * sign;
                if (trig == 0.0) continue;
                const double weight =
                    std::exp(0.5 * (lf[na] + lf[nc] - lf[n] - lf[m])) *
                    static_cast<double>(binom[n][k]) * static_cast<double>(binom[m][l]);
                Occupation next = occ;
                next[ia] = na;
                next[ic] = nc;
                out[std::move(next)] += amp * (trig * weight);
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = std::abs(it->second) < prune_eps ? out.erase(it) : std::next(it);
    }
    return FockState(state.registry(), std::move(out));
}

}  // namespace

FockState apply_beam_splitter(const FockState& state, std::string_view mode_a,
                              std::string_view mode_c, double theta, double prune_eps) {
    if (mode_a == mode_c) {
        throw Error(ErrorKind::IdenticalModes,
                    "beam splitter needs two distinct modes, got '" + std::string(mode_a) + "' twice");
    }
    const auto ia = state.registry().index_of(mode_a);
    const auto ic = state.registry().index_of(mode_c);
    return beam_splitter_by_index(state, ia, ic, theta, prune_eps);
}

FockState apply_rotator(const FockState& state, std::string_view spatial, double theta,
                        double prune_eps) {
    const auto [h, v] = state.registry().polarized_pair(spatial);
    return beam_splitter_by_index(state, h, v, theta, prune_eps);
}

PbsLayout pbs_layout(const ModeRegistry& registry, const PolarizingBS& pbs) {
    if (pbs.in2 && *pbs.in2 == pbs.in1) {
        throw Error(ErrorKind::IdenticalModes, "PBS inputs must differ");
    }
    if (pbs.out1 && pbs.out2 && *pbs.out1 == *pbs.out2) {
        throw Error(ErrorKind::IdenticalModes, "PBS outputs must differ");
    }
    const auto [in1_h, in1_v] = registry.polarized_pair(pbs.in1);
    std::optional<std::pair<std::size_t, std::size_t>> in2_pair;
    if (pbs.in2) in2_pair = registry.polarized_pair(*pbs.in2);

    enum class Slot { In1, In2, Existing };
    struct Assigned {
        std::string label;
        Slot slot;
    };
    std::vector<Assigned> outputs;
    std::vector<std::size_t> existing_indices;
    for (int k = 0; k < 2; ++k) {
        const auto& out = k == 0 ? pbs.out1 : pbs.out2;
        if (!out) continue;
        Slot slot;
        if (*out == pbs.in1) {
            slot = Slot::In1;
        } else if (pbs.in2 && *out == *pbs.in2) {
            slot = Slot::In2;
        } else if (registry.contains(*out) || registry.is_polarized(*out) ||
                   registry.contains(polarized_label(*out, Polarization::H)) ||
                   registry.contains(polarized_label(*out, Polarization::V))) {
            const auto [h, v] = registry.polarized_pair(*out);
            existing_indices.push_back(h);
            existing_indices.push_back(v);
            slot = Slot::Existing;
        } else {
            slot = (k == 1 && pbs.in2) ? Slot::In2 : Slot::In1;
        }
        outputs.push_back({*out, slot});
    }

    auto emit_slot = [&](Slot slot, std::vector<Mode>& modes) {
        for (const auto& o : outputs) {
            if (o.slot != slot) continue;
            modes.push_back(Mode{polarized_label(o.label, Polarization::H), o.label, Polarization::H});
            modes.push_back(Mode{polarized_label(o.label, Polarization::V), o.label, Polarization::V});
        }
    };

    const std::size_t in1_first = std::min(in1_h, in1_v);
    const std::size_t in2_first = in2_pair ? std::min(in2_pair->first, in2_pair->second) : SIZE_MAX;
    std::vector<Mode> modes;
    std::vector<std::size_t> passthrough_old;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        if (i == in1_first) {
            emit_slot(Slot::In1, modes);
            continue;
        }
        if (i == in2_first) {
            emit_slot(Slot::In2, modes);
            continue;
        }
        if (i == in1_h || i == in1_v) continue;
        if (in2_pair && (i == in2_pair->first || i == in2_pair->second)) continue;
        modes.push_back(registry.mode(i));
        if (std::find(existing_indices.begin(), existing_indices.end(), i) == existing_indices.end()) {
            passthrough_old.push_back(i);
        }
    }

    PbsLayout layout;
    layout.registry = ModeRegistry(std::move(modes));
    for (auto i : passthrough_old) {
        layout.passthrough.emplace_back(i, layout.registry.index_of(registry.mode(i).label));
    }
    auto dest = [&](const std::optional<std::string>& out, Polarization pol) {
        if (!out) return -1;
        return static_cast<int>(layout.registry.index_of(polarized_label(*out, pol)));
    };
    layout.src_in1_h = static_cast<int>(in1_h);
    layout.src_in1_v = static_cast<int>(in1_v);
    layout.in1_h = dest(pbs.out1, Polarization::H);
    layout.in1_v = dest(pbs.out2, Polarization::V);
    if (in2_pair) {
        layout.src_in2_h = static_cast<int>(in2_pair->first);
        layout.src_in2_v = static_cast<int>(in2_pair->second);
        layout.in2_h = dest(pbs.out2, Polarization::H);
        layout.in2_v = dest(pbs.out1, Polarization::V);
    }
    return layout;
}

FockState apply_pbs(const FockState& state, const PolarizingBS& pbs, Amplitude reflection_phase) {
    const auto layout = pbs_layout(state.registry(), pbs);
    const std::size_t width = layout.registry.size();

    // Modes that already existed and receive photons must start empty.
    std::vector<std::size_t> receiving_existing;
    for (std::size_t i = 0; i < state.registry().size(); ++i) {
        const auto& label = state.registry().mode(i).label;
        const bool routed_input = static_cast<int>(i) == layout.src_in1_h ||
                                  static_cast<int>(i) == layout.src_in1_v ||
                                  static_cast<int>(i) == layout.src_in2_h ||
                                  static_cast<int>(i) == layout.src_in2_v;
        const bool passes = std::any_of(layout.passthrough.begin(), layout.passthrough.end(),
                                        [&](const auto& p) { return p.first == i; });
        if (!routed_input && !passes && layout.registry.contains(label)) receiving_existing.push_back(i);
    }

    FockState::Terms out;
    for (const auto& [occ, amp] : state.terms()) {
        for (auto i : receiving_existing) {
            if (occ[i] != 0) {
                throw Error(ErrorKind::ModeOccupied, "PBS output mode '" +
                                                         state.registry().mode(i).label +
                                                         "' is already occupied");
            }
        }
        Occupation next(width, 0);
        for (const auto& [from, to] : layout.passthrough) next[to] = occ[from];
        int reflected = 0;
        auto route = [&](int src, int dst, bool is_reflection) {
            if (src < 0) return;
            const int n = occ[static_cast<std::size_t>(src)];
            if (n == 0) return;
            if (dst < 0) {
                throw Error(ErrorKind::ModeOccupied, "photons routed to a discarded PBS port");
            }
            next[static_cast<std::size_t>(dst)] += n;
            if (is_reflection) reflected += n;
        };
        route(layout.src_in1_h, layout.in1_h, false);
        route(layout.src_in1_v, layout.in1_v, true);
        route(layout.src_in2_h, layout.in2_h, false);
        route(layout.src_in2_v, layout.in2_v, true);
        Amplitude factor{1.0, 0.0};
        for (int r = 0; r < reflected; ++r) factor *= reflection_phase;
        out[std::move(next)] += amp * factor;
    }
    return FockState(layout.registry, std::move(out));
}

FockState inject_fock(const FockState& state, std::string_view mode, int count) {
    if (count < 0) throw Error(ErrorKind::NegativeOccupation, "negative injected photon count");
    if (count > kPhotonCap) throw Error(ErrorKind::PhotonCapExceeded, "injected count exceeds cap");
    if (auto idx = state.registry().find(mode)) {
        FockState::Terms out;
        for (const auto& [occ, amp] : state.terms()) {
            if (occ[*idx] != 0) {
                throw Error(ErrorKind::ModeOccupied,
                            "mode '" + std::string(mode) + "' already holds photons");
            }
            Occupation next = occ;
            next[*idx] = count;
            out.emplace(std::move(next), amp);
        }
        return FockState(state.registry(), std::move(out));
    }
    ModeRegistry extra;
    extra.add_scalar(std::string(mode));
    return tensor(state, basis_state(extra, {count}));
}

FockState apply(const FockState& state, const ElementSpec& element, const ElementOptions& options) {
    return std::visit(
        [&](const auto& e) -> FockState {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitter>) {
                return apply_beam_splitter(state, e.mode_a, e.mode_c, e.theta, options.prune_eps);
            } else if constexpr (std::is_same_v<T, Rotator>) {
                return apply_rotator(state, e.spatial, e.theta, options.prune_eps);
            } else if constexpr (std::is_same_v<T, PolarizingBS>) {
                return apply_pbs(state, e, options.pbs_reflection_phase);
            } else {
                return inject_fock(state, e.mode, e.count);
            }
        },
        element);
}

}  // namespace noonlab
