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

#include "noonlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

namespace noonlab::oracle {
namespace {

void enumerate(std::size_t mode, int remaining, Occupation& current, std::vector<Occupation>& out) {
    if (mode + 1 == current.size()) {
        current[mode] = remaining;
        out.push_back(current);
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        current[mode] = n;
        enumerate(mode + 1, remaining - n, current, out);
    }
}

// Sector vectors keyed by photon total, over one registry.
struct DenseState {
    ModeRegistry registry;
    std::map<int, Eigen::VectorXcd> sectors;
};

class BasisCache {
public:
    explicit BasisCache(std::size_t cap) : cap_(cap) {}

    const SectorBasis& get(std::size_t modes, int total) {
        auto key = std::make_pair(modes, total);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, SectorBasis(modes, total, cap_)).first;
        return it->second;
    }

private:
    std::size_t cap_;
    std::map<std::pair<std::size_t, int>, SectorBasis> cache_;
};

DenseState to_dense(const FockState& state, BasisCache& cache) {
    DenseState dense{state.registry(), {}};
    const auto modes = state.registry().size();
    for (const auto& [occ, amp] : state.terms()) {
        const int total = total_photons(occ);
        const auto& basis = cache.get(modes, total);
        auto [it, inserted] = dense.sectors.try_emplace(total, Eigen::VectorXcd::Zero(basis.size()));
        it->second(static_cast<Eigen::Index>(*basis.index_of(occ))) += amp;
    }
    return dense;
}

FockState to_sparse(const DenseState& dense, BasisCache& cache) {
    FockState::Terms terms;
    for (const auto& [total, vec] : dense.sectors) {
        const auto& basis = cache.get(dense.registry.size(), total);
        for (Eigen::Index i = 0; i < vec.size(); ++i) {
            if (std::abs(vec(i)) >= kDefaultPruneEps) terms.emplace(basis[static_cast<std::size_t>(i)], vec(i));
        }
    }
    return FockState(dense.registry, std::move(terms));
}

Eigen::MatrixXd mixing_generator(const SectorBasis& basis, std::size_t ia, std::size_t ic) {
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const auto& occ = basis[j];
        const int na = occ[ia];
        const int nc = occ[ic];
        // a c+ moves a photon from a to c.
        if (na > 0) {
            Occupation to = occ;
            --to[ia];
            ++to[ic];
            g(static_cast<Eigen::Index>(*basis.index_of(to)), static_cast<Eigen::Index>(j)) +=
                std::sqrt(static_cast<double>(na) * (nc + 1));
        }
        // -a+ c moves a photon from c to a.
        if (nc > 0) {
            Occupation to = occ;
            ++to[ia];
            --to[ic];
            g(static_cast<Eigen::Index>(*basis.index_of(to)), static_cast<Eigen::Index>(j)) -=
                std::sqrt(static_cast<double>(nc) * (na + 1));
        }
    }
    return g;
}

// Applies an occupation relabeling sector by sector. `map` returns the new
// occupation and phase for an old one, or nothing if the amplitude must be
// zero there (in which case a nonzero amplitude is an error).
template <class Map>
DenseState relabel(const DenseState& in, ModeRegistry out_registry, int photon_shift, BasisCache& cache,
                   Map map) {
    DenseState out{std::move(out_registry), {}};
    for (const auto& [total, vec] : in.sectors) {
        if (total + photon_shift < 0) continue;
        const auto& old_basis = cache.get(in.registry.size(), total);
        const auto& new_basis = cache.get(out.registry.size(), total + photon_shift);
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(new_basis.size()));
        for (std::size_t i = 0; i < old_basis.size(); ++i) {
            const Amplitude amp = vec(static_cast<Eigen::Index>(i));
            if (amp == Amplitude{}) continue;
            auto mapped = map(old_basis[i], std::abs(amp));
            if (!mapped) continue;
            next(static_cast<Eigen::Index>(*new_basis.index_of(mapped->first))) += amp * mapped->second;
        }
        out.sectors.emplace(total + photon_shift, std::move(next));
    }
    return out;
}

DenseState dense_pbs(const DenseState& in, const PolarizingBS& pbs, BasisCache& cache) {
    const auto layout = pbs_layout(in.registry, pbs);
    std::vector<std::size_t> must_be_empty;
    for (std::size_t i = 0; i < in.registry.size(); ++i) {
        const int ii = static_cast<int>(i);
        const bool routed = ii == layout.src_in1_h || ii == layout.src_in1_v || ii == layout.src_in2_h ||
                            ii == layout.src_in2_v;
        const bool passes = std::any_of(layout.passthrough.begin(), layout.passthrough.end(),
                                        [&](const auto& p) { return p.first == i; });
        if (!routed && !passes) must_be_empty.push_back(i);
    }
    const std::size_t width = layout.registry.size();
    return relabel(in, layout.registry, 0, cache,
                   [&](const Occupation& occ, double magnitude) -> std::optional<std::pair<Occupation, Amplitude>> {
                       for (auto i : must_be_empty) {
                           if (occ[i] != 0 && magnitude >= kDefaultPruneEps) {
                               throw Error(ErrorKind::ModeOccupied, "PBS output already occupied");
                           }
                           if (occ[i] != 0) return std::nullopt;
                       }
                       Occupation next(width, 0);
                       for (const auto& [from, to] : layout.passthrough) next[to] = occ[from];
                       const std::pair<int, int> routes[] = {{layout.src_in1_h, layout.in1_h},
                                                             {layout.src_in1_v, layout.in1_v},
                                                             {layout.src_in2_h, layout.in2_h},
                                                             {layout.src_in2_v, layout.in2_v}};
                       for (const auto& [src, dst] : routes) {
                           if (src < 0 || occ[static_cast<std::size_t>(src)] == 0) continue;
                           if (dst < 0) {
                               if (magnitude >= kDefaultPruneEps) {
                                   throw Error(ErrorKind::ModeOccupied, "photons routed to a discarded PBS port");
                               }
                               return std::nullopt;
                           }
                           next[static_cast<std::size_t>(dst)] += occ[static_cast<std::size_t>(src)];
                       }
                       return std::make_pair(next, Amplitude{1.0, 0.0});
                   });
}

DenseState dense_inject(const DenseState& in, const std::string& mode, int count, BasisCache& cache) {
    if (auto idx = in.registry.find(mode)) {
        return relabel(in, in.registry, count, cache,
                       [&](const Occupation& occ, double) -> std::optional<std::pair<Occupation, Amplitude>> {
                           if (occ[*idx] != 0) throw Error(ErrorKind::ModeOccupied, "inject into occupied mode");
                           Occupation next = occ;
                           next[*idx] = count;
                           return std::make_pair(next, Amplitude{1.0, 0.0});
                       });
    }
    ModeRegistry extra;
    extra.add_scalar(mode);
    return relabel(in, ModeRegistry::concat(in.registry, extra), count, cache,
                   [&](const Occupation& occ, double) -> std::optional<std::pair<Occupation, Amplitude>> {
                       Occupation next = occ;
                       next.push_back(count);
                       return std::make_pair(next, Amplitude{1.0, 0.0});
                   });
}

}  // namespace

SectorBasis::SectorBasis(std::size_t num_modes, int total_photons, std::size_t dimension_cap)
    : num_modes_(num_modes), total_(total_photons) {
    if (total_photons < 0) throw Error(ErrorKind::NegativeOccupation, "negative sector total");
    const auto dim = dimension(num_modes, total_photons);
    if (dim > dimension_cap) {
        throw Error(ErrorKind::SectorTooLarge,
                    "sector dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(dimension_cap));
    }
    if (num_modes == 0) {
        if (total_photons == 0) basis_.emplace_back();
    } else {
        basis_.reserve(dim);
        Occupation current(num_modes, 0);
        enumerate(0, total_photons, current, basis_);
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::size_t> SectorBasis::index_of(const Occupation& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t SectorBasis::dimension(std::size_t num_modes, int total_photons) {
    if (num_modes == 0) return total_photons == 0 ? 1 : 0;
    // C(total + modes - 1, modes - 1), saturating.
    const std::size_t k = num_modes - 1;
    const std::size_t n = static_cast<std::size_t>(total_photons) + k;
    long double value = 1.0L;
    for (std::size_t i = 1; i <= k; ++i) {
        value = value * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (value > 1e18L) return SIZE_MAX;
    }
    return static_cast<std::size_t>(std::llround(value));
}

DenseOperator element_matrix(const ElementSpec& element, const ModeRegistry& registry,
                             const SectorBasis& basis) {
    if (basis.num_modes() != registry.size()) {
        throw Error(ErrorKind::LengthMismatch, "sector basis does not match registry");
    }
    std::size_t ia = 0, ic = 0;
    double theta = 0.0;
    if (const auto* bs = std::get_if<BeamSplitter>(&element)) {
        if (bs->mode_a == bs->mode_c) throw Error(ErrorKind::IdenticalModes, "beam splitter modes must differ");
        ia = registry.index_of(bs->mode_a);
        ic = registry.index_of(bs->mode_c);
        theta = bs->theta;
    } else if (const auto* rot = std::get_if<Rotator>(&element)) {
        std::tie(ia, ic) = registry.polarized_pair(rot->spatial);
        theta = rot->theta;
    } else {
        throw Error(ErrorKind::InvalidArgument, "element changes the mode layout; no square matrix");
    }
    if (!std::isfinite(theta)) throw Error(ErrorKind::NonFinite, "non-finite element angle");
    const Eigen::MatrixXd generator = mixing_generator(basis, ia, ic);
    const Eigen::MatrixXd unitary = (theta * generator).exp();
    return DenseOperator{unitary.cast<Amplitude>()};
}

double unitarity_defect(const DenseOperator& op) {
    const auto n = op.matrix.rows();
    const Eigen::MatrixXcd defect = op.matrix.adjoint() * op.matrix - Eigen::MatrixXcd::Identity(n, n);
    return n == 0 ? 0.0 : defect.cwiseAbs().maxCoeff();
}

DenseRunResult run_dense(const dsl::CircuitIR& ir, const FockState& input,
                         const dsl::ParamValues& overrides, std::size_t dimension_cap) {
    const auto params = dsl::resolve_params(ir, overrides);
    BasisCache cache(dimension_cap);
    DenseState state = to_dense(input, cache);
    DenseRunResult result;

    auto mix = [&](const ElementSpec& element) {
        for (auto& [total, vec] : state.sectors) {
            const auto& basis = cache.get(state.registry.size(), total);
            vec = element_matrix(element, state.registry, basis).matrix * vec;
        }
    };

    for (const auto& step : ir.steps) {
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, dsl::BsStep>) {
                    mix(BeamSplitter{s.mode_a, s.mode_c, dsl::evaluate_expression(s.theta, params)});
                } else if constexpr (std::is_same_v<T, dsl::RotStep>) {
                    mix(Rotator{s.spatial, dsl::evaluate_expression(s.theta, params)});
                } else if constexpr (std::is_same_v<T, dsl::PbsStep>) {
                    state = dense_pbs(state, PolarizingBS{s.in1, s.in2, s.out1, s.out2}, cache);
                } else if constexpr (std::is_same_v<T, dsl::InjectStep>) {
                    state = dense_inject(state, s.mode, s.count, cache);
                } else {
                    const auto idx = state.registry.index_of(s.mode);
                    const std::size_t drop[] = {idx};
                    auto reduced = state.registry.without(drop);
                    state = relabel(state, reduced, -s.count, cache,
                                    [&](const Occupation& occ, double) -> std::optional<std::pair<Occupation, Amplitude>> {
                                        if (occ[idx] != s.count) return std::nullopt;
                                        Occupation next = occ;
                                        next.erase(next.begin() + static_cast<std::ptrdiff_t>(idx));
                                        return std::make_pair(next, Amplitude{1.0, 0.0});
                                    });
                    // Sectors with total < count have no matching terms.
                    double weight = 0.0;
                    for (const auto& [total, vec] : state.sectors) weight += vec.squaredNorm();
                    result.probability *= weight;
                    if (weight < kZeroNormSquared) {
                        result.empty = true;
                        state.sectors.clear();
                    } else {
                        for (auto& [total, vec] : state.sectors) vec /= std::sqrt(weight);
                    }
                }
            },
            step.op);
        if (result.empty) {
            result.probability = 0.0;
            break;
        }
    }
    result.state = to_sparse(state, cache);
    return result;
}

}  // namespace noonlab::oracle
