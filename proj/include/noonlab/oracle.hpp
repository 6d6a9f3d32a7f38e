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

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "noonlab/dsl.hpp"
#include "noonlab/elements.hpp"
#include "noonlab/fock_state.hpp"

// Dense reference evaluator. Operators are built from the mode-mixing
// generator exp[theta (a c+ - a+ c)] on fixed-photon-number sectors and
// exponentiated numerically; nothing here goes through the sparse
// creation-operator expansion, so agreement between the two is a real check.
namespace noonlab::oracle {

inline constexpr std::size_t kDefaultSectorCap = 200000;

/// All occupations of `num_modes` modes with `total_photons` photons, in
/// lexicographic order.
class SectorBasis {
public:
    SectorBasis(std::size_t num_modes, int total_photons,
                std::size_t dimension_cap = kDefaultSectorCap);

    std::size_t num_modes() const noexcept { return num_modes_; }
    int total_photons() const noexcept { return total_; }
    std::size_t size() const noexcept { return basis_.size(); }
    const Occupation& operator[](std::size_t i) const { return basis_[i]; }
    const std::vector<Occupation>& states() const noexcept { return basis_; }
    std::optional<std::size_t> index_of(const Occupation& occ) const;

    /// C(total + modes - 1, modes - 1).
    static std::size_t dimension(std::size_t num_modes, int total_photons);

private:
    std::size_t num_modes_;
    int total_;
    std::vector<Occupation> basis_;
    std::map<Occupation, std::size_t> index_;
};

struct DenseOperator {
    Eigen::MatrixXcd matrix;
};

/// Matrix of a beam splitter or rotator on one sector over `registry`.
/// Throws InvalidArgument for PBS / inject, which change the mode layout.
DenseOperator element_matrix(const ElementSpec& element, const ModeRegistry& registry,
                             const SectorBasis& basis);

/// max |U^dagger U - I|.
double unitarity_defect(const DenseOperator& op);

struct DenseRunResult {
    FockState state;
    double probability = 1.0;
    bool empty = false;
};

/// Runs the steps of `ir` on `input` with dense sector vectors. Detections
/// are projector applications followed by renormalization, mirroring the
/// sparse executor's conventions.
DenseRunResult run_dense(const dsl::CircuitIR& ir, const FockState& input,
                         const dsl::ParamValues& overrides = {},
                         std::size_t dimension_cap = kDefaultSectorCap);

}  // namespace noonlab::oracle
