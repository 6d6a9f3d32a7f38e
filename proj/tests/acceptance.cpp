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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "noonlab/audit.hpp"
#include "noonlab/circuits.hpp"
#include "noonlab/cli.hpp"
#include "noonlab/dsl.hpp"
#include "noonlab/presets.hpp"

#ifndef NOONLAB_CORPUS_DIR
#error "NOONLAB_CORPUS_DIR must point at the malformed circuit corpus"
#endif

namespace {

using namespace noonlab;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::string fixed(double x, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const FockState& stage(const circuits::EntanglerResult& res, const std::string& name) {
    for (const auto& s : res.trace) {
        if (s.name == name) return s.state;
    }
    throw std::runtime_error("missing stage " + name);
}

double worst_after_canonical_phase(const FockState& a, const FockState& b) {
    const auto ca = canonical_phase(a);
    const auto cb = canonical_phase(b);
    double worst = 0.0;
    for (const auto& [occ, amp] : ca.terms()) worst = std::max(worst, std::abs(amp - cb.amplitude(occ)));
    for (const auto& [occ, amp] : cb.terms()) worst = std::max(worst, std::abs(amp - ca.amplitude(occ)));
    return worst;
}

Verdict entangler() {
    Verdict v;
    const auto start = Clock::now();
    const auto res = circuits::two_photon_entangler();
    const double elapsed = seconds_since(start);
    const auto target = circuits::singlet_target();
    const double f = fidelity(canonical_phase(res.state), canonical_phase(target));
    v.require(f >= 1.0 - 1e-10, "fidelity");
    v.require(std::abs(res.probability - 1.0 / 18.0) <= 1e-12, "probability 1/18");
    v.require(elapsed < 1.0, "runtime < 1 s");
    v.note("fidelity 1-" + sci(1.0 - f) + ", p=" + fixed(res.probability, 15) + ", " + fixed(elapsed, 4) + " s");
    return v;
}

Verdict intermediate_states() {
    Verdict v;
    const auto res = circuits::two_photon_entangler();
    ModeRegistry r;
    r.add_polarized("3").add_polarized("4").add_polarized("5").add_polarized("6");
    auto occ = [](std::initializer_list<std::pair<int, int>> entries) {
        Occupation o(8, 0);
        for (auto [i, n] : entries) o[static_cast<std::size_t>(i)] = n;
        return o;
    };
    // Slots: 0=3H 1=3V 2=4H 3=4V 4=5H 5=5V 6=6H 7=6V.
    const double w = std::sqrt(2.0) / 3.0;
    const auto split = superposition(r, {{occ({{0, 2}}), 0.5 * w},
                                        {occ({{0, 1}, {3, 1}}), w},
                                        {occ({{3, 2}}), w},
                                        {occ({{4, 2}}), -0.5 * w},
                                        {occ({{4, 1}, {7, 1}}), -w},
                                        {occ({{7, 2}}), -w}});
    const auto heralded = superposition(r, {{occ({{0, 2}}), 0.5}, {occ({{3, 2}}), -0.5}, {occ({{4, 2}}), -0.5},
                                        {occ({{7, 2}}), 0.5}});
    const auto& sim_split = stage(res, "split");
    const auto& sim_heralded = stage(res, "heralded");
    v.require(sim_split.registry() == r && sim_heralded.registry() == r, "stage registries");
    if (!v.pass) return v;
    const double d3 = max_deviation_up_to_phase(sim_split, split);
    const double d4 = max_deviation_up_to_phase(sim_heralded, heralded);
    const double cross = std::max(std::abs(sim_heralded.amplitude(occ({{0, 1}, {3, 1}}))),
                                  std::abs(sim_heralded.amplitude(occ({{4, 1}, {7, 1}}))));
    v.require(d3 <= 1e-10, "split-state pattern");
    v.require(d4 <= 1e-10, "heralded-state pattern");
    v.require(cross < 1e-12, "cross terms removed");
    v.note("split dev " + sci(d3) + ", heralded dev " + sci(d4) + ", cross terms " + sci(cross));
    return v;
}

Verdict balanced_splitter() {
    Verdict v;
    ModeRegistry r;
    r.add_scalar("a").add_scalar("b");
    double worst = 0.0, odd = 0.0;
    for (int n = 1; n <= 5; ++n) {
        const auto c = circuits::balanced_splitter_coefficients(n);
        FockState::Terms terms;
        for (int m = 0; m <= n; ++m) terms[{2 * n - 2 * m, 2 * m}] = c[static_cast<std::size_t>(m)];
        const auto sim = apply_beam_splitter(basis_state(r, {n, n}), "a", "b", kPi / 4, 0.0);
        worst = std::max(worst, max_deviation_up_to_phase(FockState(r, terms), sim));
        for (int k = 1; k < 2 * n; k += 2) odd = std::max(odd, std::abs(sim.amplitude({k, 2 * n - k})));
    }
    v.require(worst <= 1e-10, "coefficients");
    v.require(odd < 1e-14, "odd occupations vanish");
    v.note("N=1..5 max dev " + sci(worst) + ", max odd amplitude " + sci(odd));
    return v;
}

Verdict block_law() {
    Verdict v;
    ModeRegistry r;
    r.add_scalar("a").add_scalar("b");
    double worst = 0.0;
    int comparisons = 0;
    for (int total = 0; total <= 8; ++total) {
        FockState::Terms terms;
        for (int n = 0; n <= total; ++n) terms[{n, total - n}] = Amplitude{1.0 + 0.25 * n, 0.1 * (total - n)};
        const auto input = normalize(FockState(r, terms)).first;
        for (int k = 0; k < 25; ++k) {
            const double theta = (k + 1) * (kPi / 2) / 26;
            FockState::Terms law;
            for (int n = 0; n <= total; ++n) {
                law[{n, total - n}] = input.amplitude({n, total - n}) * circuits::block_amplitude_factor(n, total, theta);
            }
            const FockState expected(r, law);
            const auto sim = circuits::theta_block(input, "a", "b", theta);
            ++comparisons;
            if (expected.squared_norm() < 1e-24 || sim.empty) {
                // Both sides must agree that nothing heralds.
                if (!(expected.squared_norm() < 1e-24 && sim.empty)) worst = INFINITY;
                continue;
            }
            worst = std::max(worst, max_deviation_up_to_phase(normalize(expected).first, sim.state));
            // The heralding probability is the squared norm of the unnormalized law.
            worst = std::max(worst, std::abs(sim.probability - expected.squared_norm()));
        }
    }
    v.require(worst <= 1e-10, "amplitude law");
    v.note(std::to_string(comparisons) + " (N, theta) cases, max dev " + sci(worst));
    return v;
}

Verdict noon_probabilities() {
    Verdict v;
    const auto start = Clock::now();
    double worst = 0.0;
    std::vector<double> sim(9, 0.0);
    for (int p = 3; p <= 8; ++p) {
        sim[static_cast<std::size_t>(p)] = circuits::noon_circuit(p).probability;
        worst = std::max(worst, std::abs(sim[static_cast<std::size_t>(p)] - circuits::noon_probability_closed_form(p)));
    }
    const double elapsed = seconds_since(start);
    v.require(worst <= 1e-9, "simulated vs closed form");
    v.require(std::abs(sim[6] - 0.0975) <= 1e-4, "P=6 ~ 0.0975");
    v.require(std::abs(sim[4] - 0.065844) <= 5e-7, "P=4 ~ 0.065844");
    v.require(std::abs(sim[3] - 0.03125) <= 1e-12, "P=3 = 0.03125");
    v.require(elapsed < 10.0, "runtime < 10 s");
    v.note("max diff " + sci(worst) + ", P3=" + fixed(sim[3], 6) + " P4=" + fixed(sim[4], 6) + " P6=" +
           fixed(sim[6], 6) + ", " + fixed(elapsed, 3) + " s");
    return v;
}

Verdict noon_support() {
    Verdict v;
    double worst = 0.0;
    std::string phases;
    for (int p = 3; p <= 8; ++p) {
        const auto res = circuits::noon_circuit(p);
        const auto hi = res.state.amplitude({p, 0});
        const auto lo = res.state.amplitude({0, p});
        v.require(res.state.size() == 2 && std::abs(hi) > 0 && std::abs(lo) > 0,
                  "support of P=" + std::to_string(p));
        worst = std::max({worst, std::abs(std::abs(hi) - 1 / std::sqrt(2.0)), std::abs(std::abs(lo) - 1 / std::sqrt(2.0))});
        const double rel = std::arg(lo / hi);
        phases += (phases.empty() ? "" : " ") + std::to_string(p) + ":" + (std::abs(rel) < 1e-9 ? "+" : "-");
    }
    v.require(worst <= 1e-10, "moduli 1/sqrt(2)");
    v.note("max modulus dev " + sci(worst) + ", relative sign of |0,P> " + phases);
    return v;
}

Verdict deletion_angles(const audit::AuditReport& report) {
    Verdict v;
    double root_min = INFINITY, zero_max = 0.0;
    for (const auto& row : report.deletion) {
        if (row.target >= 2) root_min = std::min(root_min, row.root_rule_min);
        zero_max = std::max(zero_max, row.zero_factor_max);
    }
    v.require(report.deletion.size() >= 6, "rows for i=1..6");
    v.require(root_min > 1e-3, "atan(sqrt(i)) rule leaves targets");
    v.require(zero_max < 1e-12, "atan(1/sqrt(i)) rule removes targets");
    const auto text = report.render();
    v.require(text.find("atan(sqrt(i)):") != std::string::npos &&
                  text.find("atan(1/sqrt(i))") != std::string::npos,
              "audit report lists both rules");
    v.note("atan(sqrt(i)) rule min |amp| " + sci(root_min) + ", atan(1/sqrt(i)) rule max |amp| " + sci(zero_max));
    return v;
}

Verdict oracle_equivalence(const audit::AuditReport& report) {
    Verdict v;
    v.require(report.options.cases == 200 && report.agreements == 200, "200/200 agreements");
    v.require(report.max_dense_sparse_delta <= 1e-9, "dense-sparse delta");
    v.require(report.max_unitarity_defect <= 1e-10, "unitarity");
    v.note(std::to_string(report.agreements) + "/" + std::to_string(report.options.cases) + " agree, max delta " +
           sci(report.max_dense_sparse_delta) + ", " + std::to_string(report.matrices_checked) +
           " matrices, max defect " + sci(report.max_unitarity_defect));
    return v;
}

dsl::ParseErrorKind kind_from_name(const std::string& name) {
    using K = dsl::ParseErrorKind;
    for (K k : {K::Syntax, K::UnknownDirective, K::UndeclaredMode, K::DuplicateMode, K::Semantic}) {
        if (dsl::to_string(k) == name) return k;
    }
    throw std::runtime_error("unknown error kind " + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict parser() {
    Verdict v;
    int round_trips = 0;
    for (const auto& [name, source] : dsl::all_presets()) {
        const auto ir = dsl::parse(source);
        const bool same = dsl::parse(dsl::pretty_print(ir)) == ir;
        v.require(same, "round trip of " + name);
        round_trips += same ? 1 : 0;
    }

    int positioned = 0, corpus = 0;
    for (const auto& entry : fs::directory_iterator(NOONLAB_CORPUS_DIR)) {
        if (entry.path().extension() != ".circ") continue;
        ++corpus;
        const auto text = slurp(entry.path());
        std::istringstream header(text);
        std::string hash, expect, kind;
        int line = 0, column = 0;
        header >> hash >> expect >> kind >> line >> column;
        try {
            dsl::parse(text);
            v.require(false, entry.path().filename().string() + " parsed");
        } catch (const dsl::ParseError& e) {
            const bool ok = e.kind() == kind_from_name(kind) && e.line() == line && e.column() == column;
            v.require(ok, entry.path().filename().string() + " reported " + e.what() + " at column " +
                              std::to_string(e.column()));
            positioned += ok ? 1 : 0;
        }
    }
    v.require(corpus >= 5, "malformed corpus present");

    // End to end through the command-line front end on a file written to disk.
    const auto dir = fs::temp_directory_path() / "noonlab_acceptance";
    fs::remove_all(dir);
    std::ostringstream out, err, ignored;
    const int emitted = cli::run_cli({"emit-presets", dir.string()}, ignored, err);
    const int code = cli::run_cli({"run", (dir / "fig1.circ").string()}, out, err);
    fs::remove_all(dir);
    v.require(emitted == 0 && code == 0, "run fig1.circ exit code");
    if (code == 0) {
        const auto j = nlohmann::json::parse(out.str());
        FockState::Terms terms;
        for (const auto& t : j["terms"]) {
            terms[t["occ"].get<Occupation>()] = Amplitude{t["re"].get<double>(), t["im"].get<double>()};
        }
        const auto target = circuits::singlet_target();
        const bool same_modes = j["modes"].get<std::vector<std::string>>() == target.registry().labels();
        v.require(same_modes, "output modes");
        if (same_modes) {
            const double f = fidelity(FockState(target.registry(), terms), target);
            const double p = j["probability"].get<double>();
            v.require(f >= 1.0 - 1e-10, "DSL fidelity");
            v.require(std::abs(p - 1.0 / 18.0) <= 1e-12, "DSL probability");
            v.note("run fig1.circ: p=" + fixed(p, 15) + ", fidelity 1-" + sci(1.0 - f));
        }
    }
    v.note(std::to_string(round_trips) + " presets round-trip, " + std::to_string(positioned) + "/" +
           std::to_string(corpus) + " malformed files positioned");
    return v;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria;
    const auto audit_report = std::make_shared<audit::AuditReport>();
    criteria.emplace_back("two-photon entangler", entangler);
    criteria.emplace_back("intermediate states", intermediate_states);
    criteria.emplace_back("symmetric splitter on |N,N>", balanced_splitter);
    criteria.emplace_back("filter block amplitude law", block_law);
    criteria.emplace_back("NOON heralding probabilities", noon_probabilities);
    criteria.emplace_back("NOON state support", noon_support);
    criteria.emplace_back("deletion angle check", [audit_report] {
        *audit_report = audit::run_audit({});
        return deletion_angles(*audit_report);
    });
    criteria.emplace_back("oracle equivalence", [audit_report] { return oracle_equivalence(*audit_report); });
    criteria.emplace_back("circuit language", parser);

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += v.pass ? 0 : 1;
        std::printf("AC%zu %s %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), v.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
    return failures == 0 ? 0 : 1;
}
