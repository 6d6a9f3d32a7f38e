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

#include <cstdint>
#include <string>
#include <vector>

#include "noonlab/dsl.hpp"
#include "noonlab/fock_state.hpp"

namespace noonlab::audit {

struct AuditOptions {
    std::uint64_t seed = 42;
    int cases = 200;
    int max_photons = 4;
    int modes = 5;
    /// Dense/sparse and closed-form agreement.
    double tol = 1e-9;
    double unitarity_tol = 1e-10;
};

struct RandomCase {
    dsl::CircuitIR circuit;
    FockState input;
};

/// Random circuit and input state for case `index`; depends only on
/// (seed, index, max_photons, modes).
RandomCase random_case(const AuditOptions& options, int index);

/// Registry used by random cases: floor(modes/2) polarized paths p0, p1, ...
/// followed by one scalar mode s0 when `modes` is odd.
ModeRegistry audit_registry(int modes);

struct DeletionRow {
    int target = 0;
    /// min over the two targeted terms of |amplitude| at theta = atan(sqrt(i)).
    double root_rule_min = 0.0;
    /// max over the two targeted terms of |amplitude| at theta = atan(1/sqrt(i)).
    double zero_factor_max = 0.0;
};

/// Filter block on the uniform superposition over |n, 2i+1-n>, for
/// i = 1..max_target.
std::vector<DeletionRow> deletion_angle_comparison(int max_target);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AuditReport {
    AuditOptions options;
    int agreements = 0;
    double max_dense_sparse_delta = 0.0;
    int matrices_checked = 0;
    double max_unitarity_defect = 0.0;
    std::vector<DeletionRow> deletion;
    std::vector<Check> checks;

    bool pass() const;
    std::string render() const;
};

AuditReport run_audit(const AuditOptions& options);

}  // namespace noonlab::audit
