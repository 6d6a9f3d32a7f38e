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

#include "noonlab/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace noonlab::report {
namespace {

using nlohmann::json;

std::string phase_text(Amplitude phase) {
    if (phase == Amplitude{1.0, 0.0}) return "1";
    if (phase == Amplitude{0.0, 1.0}) return "i";
    return format_real(phase.real()) + (phase.imag() < 0 ? "" : "+") + format_real(phase.imag()) + "i";
}

json terms_json(const FockState& state) {
    json terms = json::array();
    for (const auto& [occ, amp] : state.terms()) {
        terms.push_back({{"occ", occ}, {"re", amp.real()}, {"im", amp.imag()}});
    }
    return terms;
}

void write_csv_block(std::ostream& os, const FockState& state) {
    for (const auto& label : state.registry().labels()) os << label << ',';
    os << "re,im\n";
    for (const auto& [occ, amp] : state.terms()) {
        for (int n : occ) os << n << ',';
        os << format_real(amp.real()) << ',' << format_real(amp.imag()) << '\n';
    }
}

}  // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_json(const Document& doc) {
    json j;
    j["conventions"] = {
        {"beam_splitter", "a+ -> cos(t) a+ + sin(t) c+, c+ -> cos(t) c+ - sin(t) a+"},
        {"pbs_reflection_phase", phase_text(doc.conventions.pbs_reflection_phase)},
        {"prune", doc.conventions.prune_eps},
        {"term_order", "lexicographic occupation"},
    };
    j["empty"] = doc.empty;
    j["modes"] = doc.state.registry().labels();
    j["probability"] = doc.probability;
    j["terms"] = terms_json(doc.state);
    if (doc.include_stages) {
        json stages = json::array();
        for (const auto& s : doc.stages) {
            stages.push_back({{"name", s.name}, {"modes", s.state.registry().labels()}, {"terms", terms_json(s.state)}});
        }
        j["stages"] = std::move(stages);
    }
    return j.dump(2) + "\n";
}

std::string to_csv(const Document& doc) {
    std::ostringstream os;
    os << "# probability=" << format_real(doc.probability) << '\n';
    write_csv_block(os, doc.state);
    if (doc.include_stages) {
        for (const auto& s : doc.stages) {
            os << "# stage " << s.name << '\n';
            write_csv_block(os, s.state);
        }
    }
    return os.str();
}

double labelled_fidelity(const FockState& state, const FockState& target) {
    const double ns = state.squared_norm();
    const double nt = target.squared_norm();
    if (ns == 0.0 || nt == 0.0) return 0.0;
    const auto& from = state.registry();
    const auto& to = target.registry();
    std::vector<std::optional<std::size_t>> map(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) map[i] = to.find(from.mode(i).label);

    Amplitude overlap{0.0, 0.0};
    for (const auto& [occ, amp] : state.terms()) {
        Occupation moved(to.size(), 0);
        bool inside = true;
        for (std::size_t i = 0; i < occ.size() && inside; ++i) {
            if (occ[i] == 0) continue;
            if (!map[i]) {
                inside = false;
            } else {
                moved[*map[i]] = occ[i];
            }
        }
        if (inside) overlap += std::conj(target.amplitude(moved)) * amp;
    }
    return std::norm(overlap) / (ns * nt);
}

}  // namespace noonlab::report
