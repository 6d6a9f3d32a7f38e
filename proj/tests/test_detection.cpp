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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "noonlab/circuits.hpp"
#include "noonlab/detection.hpp"
#include "noonlab/elements.hpp"
#include "test_support.hpp"

namespace noonlab {
namespace {

using support::kind_of;
using support::random_state;
using support::scalars;

constexpr double kPi = std::numbers::pi;

TEST(Postselect, ProjectsAndNormalizes) {
    const auto r = scalars({"m1", "m2"});
    const double h = 1.0 / std::sqrt(2.0);
    const auto s = superposition(r, {{{1, 1}, h}, {{2, 0}, h}});
    const auto res = postselect(s, {{"m2", 1}});
    EXPECT_FALSE(res.empty);
    EXPECT_NEAR(res.probability, 0.5, 1e-15);
    EXPECT_EQ(res.state.registry().labels(), (std::vector<std::string>{"m1"}));
    EXPECT_NEAR(res.state.amplitude({1}).real(), 1.0, 1e-15);
}

TEST(Postselect, HomCoincidenceIsImpossible) {
    const auto r = scalars({"m", "anc"});
    const auto out = apply_beam_splitter(basis_state(r, {1, 1}), "m", "anc", kPi / 4);
    const auto res = postselect(out, {{"anc", 1}});
    EXPECT_TRUE(res.empty);
    EXPECT_EQ(res.probability, 0.0);
    EXPECT_TRUE(res.state.is_zero());
}

TEST(Postselect, UnknownDetectorMode) {
    const auto r = scalars({"a"});
    EXPECT_EQ(kind_of([&] { postselect(basis_state(r, {1}), {{"zz", 1}}); }), ErrorKind::UnknownMode);
}

TEST(Postselect, EntanglerHeraldProbability) {
    const auto res = circuits::two_photon_entangler();
    EXPECT_NEAR(res.probability, 1.0 / 18.0, 1e-12);
}

TEST(OutcomeDistribution, SinglePhotonAndHom) {
    const auto r = scalars({"m1", "m2"});
    const auto one = apply_beam_splitter(basis_state(r, {1, 0}), "m1", "m2", kPi / 4);
    const auto d1 = outcome_distribution(one, {"m2"});
    ASSERT_EQ(d1.size(), 2u);
    EXPECT_NEAR(d1.at({0}), 0.5, 1e-15);
    EXPECT_NEAR(d1.at({1}), 0.5, 1e-15);

    const auto hom = apply_beam_splitter(basis_state(r, {1, 1}), "m1", "m2", kPi / 4);
    const auto d2 = outcome_distribution(hom, {"m2"});
    EXPECT_NEAR(d2.at({0}), 0.5, 1e-15);
    EXPECT_NEAR(d2.at({2}), 0.5, 1e-15);
    EXPECT_EQ(d2.count({1}), 0u);

    const auto none = outcome_distribution(one, {});
    ASSERT_EQ(none.size(), 1u);
    EXPECT_NEAR(none.at({}), 1.0, 1e-15);
}

TEST(OutcomeDistribution, SumsToOneAndMatchesPostselect) {
    std::mt19937_64 rng(99);
    const auto r = scalars({"a", "b", "c", "d"});
    for (int trial = 0; trial < 25; ++trial) {
        const auto s = random_state(r, 5, rng, 6);
        const auto dist = outcome_distribution(s, {"b", "d"});
        double sum = 0.0;
        for (const auto& [pattern, p] : dist) {
            sum += p;
            const auto res = postselect(s, {{"b", pattern[0]}, {"d", pattern[1]}});
            EXPECT_NEAR(res.probability, p, 1e-12);
        }
        EXPECT_NEAR(sum, 1.0, 1e-10);
    }
}

TEST(Postselect, IdempotentOnItsOutput) {
    std::mt19937_64 rng(5);
    const auto r = scalars({"a", "b", "c"});
    const auto s = random_state(r, 4, rng, 6);
    const auto first = postselect(s, {{"c", 1}});
    ASSERT_FALSE(first.empty);
    const auto again = postselect(first.state, {});
    EXPECT_NEAR(again.probability, 1.0, 1e-12);
    EXPECT_EQ(again.state.registry(), first.state.registry());
    EXPECT_LT(support::max_abs_difference(again.state, first.state), 1e-15);
}

TEST(Postselect, RemovingOneHalfOfAPathKeepsTheOther) {
    ModeRegistry r;
    r.add_polarized("4").add_scalar("x");
    const auto res = postselect(basis_state(r, {1, 1, 0}), {{"4V", 1}});
    EXPECT_EQ(res.state.registry().labels(), (std::vector<std::string>{"4H", "x"}));
    EXPECT_FALSE(res.state.registry().is_polarized("4"));
}

}  // namespace
}  // namespace noonlab
