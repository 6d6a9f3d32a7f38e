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

#include "noonlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "noonlab/audit.hpp"
#include "noonlab/circuits.hpp"
#include "noonlab/dsl.hpp"
#include "noonlab/parallel.hpp"
#include "noonlab/presets.hpp"
#include "noonlab/report.hpp"

namespace noonlab::cli {
namespace {

namespace fs = std::filesystem;

struct RunFlags {
    std::string file;
    std::string format = "json";
    bool trace = false;
    double prune = kDefaultPruneEps;
    std::vector<std::string> sets;
    std::string pbs_phase = "1";
};

struct NoonFlags {
    int total = 0;
    std::string emit_circ;
    double tol = 1e-10;
};

struct SweepFlags {
    std::string file;
    std::string param;
    std::string from;
    std::string to;
    int points = 51;
    std::string target = "none";
    std::vector<std::string> sets;
};

struct FormulaFlags {
    int max_total = 10;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double eval_flag(const std::string& name, const std::string& text) {
    try {
        return dsl::evaluate_expression(text, {});
    } catch (const dsl::ParseError& e) {
        throw Error(ErrorKind::InvalidArgument, name + ": " + e.message());
    }
}

dsl::ParamValues parse_sets(const std::vector<std::string>& sets) {
    dsl::ParamValues out;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorKind::InvalidArgument, "--set expects name=value, got '" + s + "'");
        }
        out[s.substr(0, eq)] = eval_flag("--set " + s.substr(0, eq), s.substr(eq + 1));
    }
    return out;
}

void add_run_options(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--trace", flags.trace, "Include the state after every step");
    cmd->add_option("--prune", flags.prune, "Drop amplitudes with modulus below this value");
    cmd->add_option("--set", flags.sets, "Override a parameter, name=expr");
    cmd->add_option("--pbs-phase", flags.pbs_phase, "Phase on PBS reflected (V) light")
        ->check(CLI::IsMember({"1", "i"}));
}

int emit_run(const dsl::CircuitIR& ir, const RunFlags& flags, std::ostream& out) {
    dsl::ExecOptions options;
    options.overrides = parse_sets(flags.sets);
    options.trace = flags.trace;
    options.element.prune_eps = flags.prune;
    options.element.pbs_reflection_phase = flags.pbs_phase == "i" ? Amplitude{0.0, 1.0} : Amplitude{1.0, 0.0};
    auto result = dsl::execute(ir, options);

    report::Document doc{std::move(result.state), result.probability, result.empty, std::move(result.stages),
                         flags.trace, {flags.prune, options.element.pbs_reflection_phase}};
    out << (flags.format == "csv" ? report::to_csv(doc) : report::to_json(doc));
    return kOk;
}

int cmd_noon(const NoonFlags& flags, std::ostream& out) {
    if (flags.total < 2) throw CLI::ValidationError("P", "photon number must be at least 2");
    const auto source = dsl::noon_source(flags.total);
    if (!flags.emit_circ.empty()) {
        std::ofstream file(flags.emit_circ, std::ios::binary);
        if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + flags.emit_circ + "'");
        file << source;
    }
    const auto plan = circuits::noon_plan(flags.total);
    const auto run = dsl::execute(dsl::parse(source));
    const auto state = drop_vacuum_modes(run.state);
    const double closed = circuits::noon_probability_closed_form(flags.total);
    const double diff = std::abs(run.probability - closed);

    nlohmann::json j;
    j["photons"] = flags.total;
    j["input"] = {plan.input.first, plan.input.second};
    j["deleted_occupations"] = plan.deleted_occupations;
    j["block_angles"] = plan.block_angles;
    j["simulated"] = run.probability;
    j["closed_form"] = closed;
    j["abs_diff"] = diff;
    j["tol"] = flags.tol;
    j["agree"] = diff <= flags.tol;
    j["modes"] = state.registry().labels();
    const auto hi = state.amplitude({flags.total, 0});
    const auto lo = state.amplitude({0, flags.total});
    j["relative_phase"] = std::abs(hi) > 0.0 ? std::arg(lo / hi) + 0.0 : 0.0;
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [occ, amp] : state.terms()) {
        terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    j["terms"] = std::move(terms);
    out << j.dump(2) << '\n';
    return kOk;
}

std::string occupation_tag(const Occupation& occ) {
    std::string s = "[";
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(occ[i]);
    }
    return s + "]";
}

int cmd_sweep(const SweepFlags& flags, std::ostream& out) {
    const auto ir = dsl::parse(read_file(flags.file));
    const bool known = std::any_of(ir.params.begin(), ir.params.end(),
                                   [&](const dsl::ParamDecl& p) { return p.name == flags.param; });
    if (!known) throw Error(ErrorKind::InvalidArgument, "unknown parameter '" + flags.param + "'");
    if (flags.points < 1) throw CLI::ValidationError("--points", "must be at least 1");
    const double from = eval_flag("--from", flags.from);
    const double to = eval_flag("--to", flags.to);
    auto base = parse_sets(flags.sets);
    const auto target = circuits::singlet_target();

    struct Row {
        double theta;
        dsl::RunResult run;
    };
    const auto rows = parallel_map(static_cast<std::size_t>(flags.points), [&](std::size_t k) {
        const double theta = flags.points == 1 ? from : from + (to - from) * static_cast<double>(k) / (flags.points - 1);
        dsl::ExecOptions options;
        options.overrides = base;
        options.overrides[flags.param] = theta;
        return Row{theta, dsl::execute(ir, options)};
    });

    std::map<Occupation, int> columns;
    for (const auto& r : rows) {
        for (const auto& [occ, amp] : r.run.state.terms()) columns.emplace(occ, 0);
    }
    out << "theta,probability";
    if (flags.target == "singlet") out << ",fidelity";
    for (const auto& [occ, unused] : columns) out << ",re" << occupation_tag(occ) << ",im" << occupation_tag(occ);
    out << '\n';
    for (const auto& r : rows) {
        out << report::format_real(r.theta) << ',' << report::format_real(r.run.probability);
        if (flags.target == "singlet") out << ',' << report::format_real(report::labelled_fidelity(r.run.state, target));
        const double scale = std::sqrt(r.run.probability);
        for (const auto& [occ, unused] : columns) {
            const auto amp = r.run.state.amplitude(occ) * scale;
            out << ',' << report::format_real(amp.real()) << ',' << report::format_real(amp.imag());
        }
        out << '\n';
    }
    return kOk;
}

int cmd_formulas(const FormulaFlags& flags, std::ostream& out) {
    if (flags.max_total < 2) throw CLI::ValidationError("--max", "must be at least 2");
    out << "# NOON heralding probability\nP,blocks,deleted,probability\n";
    for (int p = 2; p <= flags.max_total; ++p) {
        const auto plan = circuits::noon_plan(p);
        std::string deleted;
        for (int d : plan.deleted_occupations) deleted += (deleted.empty() ? "" : " ") + std::to_string(d);
        out << p << ',' << plan.blocks() << ',' << deleted << ','
            << report::format_real(circuits::noon_probability_closed_form(p)) << '\n';
    }
    out << "# block angles removing occupation i\ni,atan(1/sqrt(i)),atan(sqrt(i))\n";
    for (int i = 1; i <= flags.max_total; ++i) {
        out << i << ',' << report::format_real(circuits::deletion_angle(i)) << ','
            << report::format_real(circuits::deletion_angle(i, circuits::AngleRule::RootTarget)) << '\n';
    }
    out << "# symmetric splitter on |N,N>: amplitude of |2N-2m,2m>\nN,m,amplitude\n";
    for (int n = 1; n <= std::min(flags.max_total, 5); ++n) {
        const auto c = circuits::balanced_splitter_coefficients(n);
        for (int m = 0; m <= n; ++m) {
            out << n << ',' << m << ',' << report::format_real(c[static_cast<std::size_t>(m)]) << '\n';
        }
    }
    return kOk;
}

int cmd_audit(const audit::AuditOptions& options, std::ostream& out) {
    const auto report = audit::run_audit(options);
    out << report.render();
    return report.pass() ? kOk : kAuditFailure;
}

int cmd_emit_presets(const std::string& dir, std::ostream& out) {
    fs::create_directories(dir);
    for (const auto& [name, text] : dsl::all_presets()) {
        const auto path = fs::path(dir) / name;
        std::ofstream file(path, std::ios::binary);
        if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
        file << text;
        out << path.string() << '\n';
    }
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"noonlab: heralded linear-optics circuit simulator", "noonlab"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Execute a .circ file");
    run->add_option("file", run_flags.file, "Circuit file")->required();
    add_run_options(run, run_flags);

    RunFlags bell_flags;
    auto* bell = app.add_subcommand("bell", "Run the built-in two-photon entangler (fig1.circ)");
    add_run_options(bell, bell_flags);

    NoonFlags noon_flags;
    auto* noon = app.add_subcommand("noon", "Simulate the NOON generator and compare with the closed form");
    noon->add_option("P", noon_flags.total, "Total photon number (>= 2)")->required();
    noon->add_option("--emit-circ", noon_flags.emit_circ, "Also write the generated circuit here");
    noon->add_option("--tol", noon_flags.tol, "Agreement tolerance");

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Scan one parameter and tabulate the output");
    sweep->add_option("file", sweep_flags.file, "Circuit file")->required();
    sweep->add_option("--param", sweep_flags.param, "Parameter to scan")->required();
    sweep->add_option("--from", sweep_flags.from, "First value (expression)")->required();
    sweep->add_option("--to", sweep_flags.to, "Last value (expression)")->required();
    sweep->add_option("--points", sweep_flags.points, "Number of rows");
    sweep->add_option("--target", sweep_flags.target, "Add a fidelity column")
        ->check(CLI::IsMember({"none", "singlet"}));
    sweep->add_option("--set", sweep_flags.sets, "Override another parameter, name=expr");

    FormulaFlags formula_flags;
    auto* formulas = app.add_subcommand("formulas", "Print closed-form tables");
    formulas->add_option("--max", formula_flags.max_total, "Largest photon number");

    audit::AuditOptions audit_options;
    auto* audit_cmd = app.add_subcommand("audit", "Cross-check the sparse engine against the dense oracle");
    audit_cmd->add_option("--seed", audit_options.seed, "Random seed");
    audit_cmd->add_option("--cases", audit_options.cases, "Number of random circuits");
    audit_cmd->add_option("--photons", audit_options.max_photons, "Maximum photons per input term");
    audit_cmd->add_option("--modes", audit_options.modes, "Number of modes");
    audit_cmd->add_option("--tol", audit_options.tol, "Dense/sparse tolerance");

    std::string preset_dir;
    auto* emit = app.add_subcommand("emit-presets", "Write the preset .circ files");
    emit->add_option("dir", preset_dir, "Destination directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kRuntimeError;
    }

    try {
        if (*run) return emit_run(dsl::parse(read_file(run_flags.file)), run_flags, out);
        if (*bell) return emit_run(dsl::parse(dsl::entangler_source()), bell_flags, out);
        if (*noon) return cmd_noon(noon_flags, out);
        if (*sweep) return cmd_sweep(sweep_flags, out);
        if (*formulas) return cmd_formulas(formula_flags, out);
        if (*audit_cmd) return cmd_audit(audit_options, out);
        return cmd_emit_presets(preset_dir, out);
    } catch (const dsl::ParseError& e) {
        err << e.what() << '\n';
        return kParseError;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

}  // namespace noonlab::cli
