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

#include "noonlab/audit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "noonlab/circuits.hpp"
#include "noonlab/oracle.hpp"
#include "noonlab/parallel.hpp"

namespace noonlab::audit {
namespace {

std::string exact_literal(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

double max_abs_difference(const FockState& a, const FockState& b) {
    double worst = 0.0;
    for (const auto& [occ, amp] : a.terms()) worst = std::max(worst, std::abs(amp - b.amplitude(occ)));
    for (const auto& [occ, amp] : b.terms()) worst = std::max(worst, std::abs(amp - a.amplitude(occ)));
    return worst;
}

struct CaseOutcome {
    bool agree = false;
    double delta = 0.0;
};

CaseOutcome compare_case(const AuditOptions& options, int index) {
    const auto c = random_case(options, index);
    const auto sparse = dsl::execute_from(c.circuit, c.input);
    const auto dense = oracle::run_dense(c.circuit, c.input);
    if (!(sparse.state.registry() == dense.state.registry()) || sparse.empty != dense.empty) {
        return {false, INFINITY};
    }
    const double delta = std::max(max_abs_difference(sparse.state, dense.state),
                                  std::abs(sparse.probability - dense.probability));
    return {delta <= options.tol, delta};
}

std::pair<int, double> unitarity_sweep(const AuditOptions& options) {
    const auto registry = audit_registry(options.modes);
    std::vector<ElementSpec> elements;
    int k = 0;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        for (std::size_t j = i + 1; j < registry.size(); ++j) {
            elements.push_back(BeamSplitter{registry.mode(i).label, registry.mode(j).label, 0.37 * ++k});
        }
    }
    for (int p = 0; p < options.modes / 2; ++p) elements.push_back(Rotator{"p" + std::to_string(p), 0.9 + p});

    int checked = 0;
    double worst = 0.0;
    for (int total = 0; total <= options.max_photons; ++total) {
        const oracle::SectorBasis basis(registry.size(), total);
        if (basis.size() > 500) continue;
        for (const auto& e : elements) {
            worst = std::max(worst, oracle::unitarity_defect(oracle::element_matrix(e, registry, basis)));
            ++checked;
        }
    }
    return {checked, worst};
}

double hom_element() {
    ModeRegistry registry;
    registry.add_scalar("a").add_scalar("b");
    const oracle::SectorBasis basis(2, 2);
    const auto op = oracle::element_matrix(BeamSplitter{"a", "b", std::numbers::pi / 4}, registry, basis);
    const auto i = static_cast<Eigen::Index>(*basis.index_of({1, 1}));
    return std::abs(op.matrix(i, i));
}

double balanced_splitter_deviation(int max_n) {
    double worst = 0.0;
    ModeRegistry registry;
    registry.add_scalar("a").add_scalar("b");
    for (int n = 1; n <= max_n; ++n) {
        const auto coeffs = circuits::balanced_splitter_coefficients(n);
        FockState::Terms expected;
        for (int m = 0; m <= n; ++m) expected[{2 * n - 2 * m, 2 * m}] = coeffs[static_cast<std::size_t>(m)];
        const auto out = apply_beam_splitter(basis_state(registry, {n, n}), "a", "b", std::numbers::pi / 4);
        worst = std::max(worst, max_deviation_up_to_phase(FockState(registry, expected), out));
    }
    return worst;
}

double block_law_deviation(int max_total, int grid) {
    ModeRegistry registry;
    registry.add_scalar("a").add_scalar("b");
    double worst = 0.0;
    for (int total = 0; total <= max_total; ++total) {
        FockState::Terms input;
        for (int n = 0; n <= total; ++n) input[{n, total - n}] = (n % 2 ? -1.0 : 1.0) * (n + 1.0);
        const auto in = normalize(FockState(registry, input)).first;
        for (int g = 0; g < grid; ++g) {
            const double theta = (g + 1) * (std::numbers::pi / 2) / (grid + 1);
            const auto block = circuits::theta_block(in, "a", "b", theta);
            const double scale = std::sqrt(block.probability);
            for (int n = 0; n <= total; ++n) {
                const Amplitude expected = in.amplitude({n, total - n}) *
                                           circuits::block_amplitude_factor(n, total, theta);
                const Amplitude simulated = block.state.amplitude({n, total - n}) * scale;
                worst = std::max(worst, std::abs(expected - simulated));
            }
        }
    }
    return worst;
}

}  // namespace

ModeRegistry audit_registry(int modes) {
    if (modes < 2) throw Error(ErrorKind::InvalidArgument, "audit needs at least 2 modes");
    ModeRegistry registry;
    for (int p = 0; p < modes / 2; ++p) registry.add_polarized("p" + std::to_string(p));
    if (modes % 2) registry.add_scalar("s0");
    return registry;
}

RandomCase random_case(const AuditOptions& options, int index) {
    if (options.max_photons < 1) throw Error(ErrorKind::InvalidArgument, "audit needs photons >= 1");
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    auto uniform_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::normal_distribution<double> gauss;

    const auto registry = audit_registry(options.modes);
    const int paths = options.modes / 2;
    const auto width = static_cast<int>(registry.size());

    FockState::Terms terms;
    const int term_count = uniform_int(1, 3);
    for (int t = 0; t < term_count; ++t) {
        Occupation occ(registry.size(), 0);
        const int photons = uniform_int(1, options.max_photons);
        for (int p = 0; p < photons; ++p) ++occ[static_cast<std::size_t>(uniform_int(0, width - 1))];
        terms[occ] += Amplitude{gauss(rng), gauss(rng)};
    }
    RandomCase out{{}, normalize(FockState(registry, std::move(terms))).first};

    for (int p = 0; p < paths; ++p) out.circuit.modes.push_back({"p" + std::to_string(p), true});
    if (options.modes % 2) out.circuit.modes.push_back({"s0", false});

    const int steps = uniform_int(3, 6);
    for (int s = 0; s < steps; ++s) {
        const int pick = uniform_int(0, 99);
        const auto theta = exact_literal(std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng));
        if (pick < 15 && paths >= 2) {
            const int x = uniform_int(0, paths - 1);
            int y = uniform_int(0, paths - 2);
            if (y >= x) ++y;
            const auto lx = "p" + std::to_string(x);
            const auto ly = "p" + std::to_string(y);
            const bool swap = uniform_int(0, 1) == 1;
            out.circuit.steps.push_back({dsl::PbsStep{lx, ly, swap ? ly : lx, swap ? lx : ly}});
        } else if (pick < 40) {
            const int p = uniform_int(0, paths - 1);
            out.circuit.steps.push_back({dsl::RotStep{"p" + std::to_string(p), theta}});
        } else {
            const int a = uniform_int(0, width - 1);
            int c = uniform_int(0, width - 2);
            if (c >= a) ++c;
            out.circuit.steps.push_back(
                {dsl::BsStep{registry.mode(static_cast<std::size_t>(a)).label,
                             registry.mode(static_cast<std::size_t>(c)).label, theta}});
        }
    }
    if (uniform_int(0, 9) < 3) {
        const int m = uniform_int(0, width - 1);
        out.circuit.steps.push_back(
            {dsl::DetectStep{registry.mode(static_cast<std::size_t>(m)).label, uniform_int(0, 1)}});
    }
    return out;
}

std::vector<DeletionRow> deletion_angle_comparison(int max_target) {
    ModeRegistry registry;
    registry.add_scalar("a").add_scalar("b");
    std::vector<DeletionRow> rows;
    for (int i = 1; i <= max_target; ++i) {
        const int total = 2 * i + 1;
        FockState::Terms terms;
        for (int n = 0; n <= total; ++n) terms[{n, total - n}] = 1.0;
        const auto input = normalize(FockState(registry, terms)).first;
        auto targeted = [&](const FockState& s) {
            return std::make_pair(std::abs(s.amplitude({i, total - i})), std::abs(s.amplitude({total - i, i})));
        };
        DeletionRow row{i};
        const auto root =
            circuits::theta_block(input, "a", "b", circuits::deletion_angle(i, circuits::AngleRule::RootTarget));
        const auto [p1, p2] = targeted(root.state);
        row.root_rule_min = std::min(p1, p2);
        const auto zeroed = circuits::theta_block(input, "a", "b", circuits::deletion_angle(i));
        const auto [z1, z2] = targeted(zeroed.state);
        row.zero_factor_max = std::max(z1, z2);
        rows.push_back(row);
    }
    return rows;
}

bool AuditReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string AuditReport::render() const {
    std::ostringstream os;
    os << "noonlab audit (seed=" << options.seed << ", cases=" << options.cases
       << ", photons<=" << options.max_photons << ", modes=" << options.modes << ")\n";
    for (const auto& c : checks) os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    os << "deletion angles (|targeted amplitude| after one block):\n";
    for (const auto& r : deletion) {
        os << "  i=" << r.target << "  atan(sqrt(i)): " << sci(r.root_rule_min)
           << "  atan(1/sqrt(i)): " << sci(r.zero_factor_max) << '\n';
    }
    os << "result: " << (pass() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

AuditReport run_audit(const AuditOptions& options) {
    AuditReport report;
    report.options = options;

    const auto outcomes = parallel_map(static_cast<std::size_t>(std::max(options.cases, 0)),
                                       [&](std::size_t i) { return compare_case(options, static_cast<int>(i)); });
    for (const auto& o : outcomes) {
        report.agreements += o.agree ? 1 : 0;
        report.max_dense_sparse_delta = std::max(report.max_dense_sparse_delta, o.delta);
    }
    {
        std::ostringstream d;
        d << report.agreements << '/' << options.cases << " dense-sparse agreements, max |delta| "
          << (report.max_dense_sparse_delta <= options.tol ? "< " : "= ")
          << sci(report.max_dense_sparse_delta <= options.tol ? options.tol : report.max_dense_sparse_delta)
          << " (observed " << sci(report.max_dense_sparse_delta) << ")";
        report.checks.push_back({"oracle", report.agreements == options.cases, d.str()});
    }

    std::tie(report.matrices_checked, report.max_unitarity_defect) = unitarity_sweep(options);
    report.checks.push_back({"unitarity", report.max_unitarity_defect <= options.unitarity_tol,
                             std::to_string(report.matrices_checked) + " element matrices, max |U^dag U - I| = " +
                                 sci(report.max_unitarity_defect)});

    const double hom = hom_element();
    report.checks.push_back({"hom", hom < 1e-12, "|<1,1|BS(pi/4)|1,1>| = " + sci(hom)});

    const double balanced = balanced_splitter_deviation(5);
    report.checks.push_back(
        {"balanced-splitter", balanced <= options.tol, "N=1..5, max deviation " + sci(balanced)});

    const double block = block_law_deviation(8, 25);
    report.checks.push_back({"block-law", block <= options.tol, "0<=n<=N<=8, 25 angles, max deviation " + sci(block)});

    double noon_worst = 0.0;
    for (int p = 3; p <= 8; ++p) {
        noon_worst = std::max(noon_worst, std::abs(circuits::noon_circuit(p).probability -
                                                   circuits::noon_probability_closed_form(p)));
    }
    report.checks.push_back(
        {"noon-probability", noon_worst <= options.tol, "P=3..8, max |simulated - closed form| = " + sci(noon_worst)});

    report.deletion = deletion_angle_comparison(6);
    bool deletion_ok = true;
    for (const auto& r : report.deletion) {
        if (r.zero_factor_max >= 1e-12) deletion_ok = false;
        if (r.target >= 2 && r.root_rule_min <= 1e-3) deletion_ok = false;
    }
    report.checks.push_back({"deletion-angle", deletion_ok,
                             "atan(1/sqrt(i)) removes the targeted terms; atan(sqrt(i)) leaves them for i>=2"});
    return report;
}

}  // namespace noonlab::audit
