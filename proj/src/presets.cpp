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

#include "noonlab/presets.hpp"

#include <sstream>

#include "noonlab/circuits.hpp"

namespace noonlab::dsl {

std::string entangler_source() {
    return R"(# Two-photon polarization entangler fed with |H>_1 |H>_2.
mode 1 pol
mode 2 pol
mode D1
mode D2
param theta_mix = pi/4
param theta_rot = acos(sqrt(1/3))
param theta_herald = pi/4
param theta_final = pi/4
input 1H 1 2H 1
bs 1H 2H theta=theta_mix
rot 1 theta=theta_rot
rot 2 theta=theta_rot
pbs 1 - -> 3 4
pbs 2 - -> 5 6
# V-polarized single photons enter the second ports of the herald splitters.
inject D1 1
inject D2 1
bs 4V D1 theta=theta_herald
bs 6V D2 theta=theta_herald
detect D1 = 1
detect D2 = 1
pbs 3 4 -> 7 -
pbs 5 6 -> 8 -
rot 7 theta=theta_final
rot 8 theta=theta_final
pbs 7 8 -> A B
)";
}

std::string filter_block_source(int total, const std::string& theta_expr) {
    std::ostringstream os;
    os << "# Filter block on the binomial " << total << "-photon state.\n"
       << "mode a\nmode b\nmode c\nmode d\n"
       << "param theta = " << theta_expr << '\n'
       << "input a " << total << '\n'
       << "bs a b theta=pi/4\n"
       << "inject c 1\ninject d 1\n"
       << "bs a c theta=theta\nbs b d theta=theta\n"
       << "detect c = 1\ndetect d = 1\n";
    return os.str();
}

std::string noon_source(int total_photons) {
    const auto plan = circuits::noon_plan(total_photons);
    std::ostringstream os;
    os << "# NOON generator, " << total_photons << " photons, " << plan.blocks() << " block(s).\n";
    os << "mode a\nmode b\n";
    for (int k = 1; k <= plan.blocks(); ++k) os << "mode c" << k << "\nmode d" << k << '\n';
    for (int k = 1; k <= plan.blocks(); ++k) {
        os << "param theta" << k << " = atan(1/sqrt(" << plan.deleted_occupations[k - 1] << "))\n";
    }
    os << "input a " << plan.input.first << " b " << plan.input.second << '\n';
    os << "bs a b theta=pi/4\n";
    for (int k = 1; k <= plan.blocks(); ++k) {
        os << "# block " << k << " removes occupation " << plan.deleted_occupations[k - 1]
           << " and its mirror\n";
        os << "inject c" << k << " 1\ninject d" << k << " 1\n";
        os << "bs a c" << k << " theta=theta" << k << '\n';
        os << "bs b d" << k << " theta=theta" << k << '\n';
        os << "detect c" << k << " = 1\ndetect d" << k << " = 1\n";
    }
    return os.str();
}

std::vector<std::pair<std::string, std::string>> all_presets() {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("fig1.circ", entangler_source());
    out.emplace_back("fig2.circ", filter_block_source(2, "pi/4"));
    for (int p = 2; p <= 8; ++p) out.emplace_back("noon" + std::to_string(p) + ".circ", noon_source(p));
    return out;
}

}  // namespace noonlab::dsl
