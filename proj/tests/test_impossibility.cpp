// Copyright 2026 The ParityLens Authors
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

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "paritylens/errors.hpp"
#include "paritylens/impossibility.hpp"
#include "paritylens/metrics.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens {
namespace {

using testing::q;

TEST(TheoremConditions, HiringExample) {
  const auto tc = theorem_conditions(joint_distribution(testing::table1_dataset()));
  EXPECT_FALSE(tc.perfect_predictor);
  EXPECT_TRUE(tc.equal_base_rates);
  for (const auto& [g, b] : tc.base_rates) EXPECT_EQ(b, q(1, 2));
  EXPECT_EQ(tc.posteriors.size(), 4u);
}

TEST(TheoremConditions, DeterministicPosteriorsArePerfect) {
  JointTable j;
  j.add({0}, {0}, false, q(1, 4));
  j.add({0}, {1}, true, q(1, 4));
  j.add({1}, {0}, true, q(1, 2));
  const auto tc = theorem_conditions(j);
  EXPECT_TRUE(tc.perfect_predictor);
  EXPECT_FALSE(tc.equal_base_rates);
}

TEST(TheoremConditions, UnequalPrevalenceScenario) {
  const auto s = sd::PhelpsianScenario::prevalence(q(1, 5), q(1, 2), q(3, 5));
  EXPECT_FALSE(theorem_conditions(sd::scenario_joint(s)).equal_base_rates);
}

TEST(TheoremConditions, ZeroMassCellsListed) {
  JointTable j;
  j.add({0}, {0}, true, q(1, 2));
  j.add({0}, {1}, true, q(0));
  j.add({1}, {0}, true, q(1, 2));
  const auto tc = theorem_conditions(j);
  EXPECT_EQ(tc.zero_mass_cells.size(), 1u);
  EXPECT_EQ(tc.posteriors.size(), 2u);
}

TEST(Decomposition, MassesSumToOneAndPathsAgree) {
  const Dataset d = testing::table1_dataset();
  const auto joint = joint_distribution(d);
  const auto alg = empirical_algorithm(d);
  const auto dec = decompose_rates(joint, alg);
  const auto masses = confusion_by_group(joint, alg);
  ASSERT_EQ(dec.size(), masses.size());
  for (std::size_t i = 0; i < dec.size(); ++i) {
    EXPECT_EQ(dec[i].true_positive + dec[i].false_positive + dec[i].false_negative + dec[i].true_negative, q(1));
    EXPECT_TRUE(dec[i].fourth_from_three());
    EXPECT_TRUE(check_rate_identities(masses[i], dec[i]));
  }
  const Profile m{*d.schema().sensitive[0].find("M")};
  for (const auto& r : dec) {
    if (r.group != m) continue;
    EXPECT_EQ(r.true_positive, q(2, 5));
    EXPECT_EQ(r.false_positive, q(1, 10));
    EXPECT_EQ(*r.ppv, q(4, 5));
  }
}

TEST(Decomposition, PerfectPredictorHasNoErrorMass) {
  JointTable j;
  j.add({0}, {0}, false, q(1, 2));
  j.add({0}, {1}, true, q(1, 2));
  RandomizedAlgorithm alg;
  alg.set({0}, {0}, q(0));
  alg.set({0}, {1}, q(1));
  const auto dec = decompose_rates(j, alg);
  ASSERT_EQ(dec.size(), 1u);
  EXPECT_EQ(dec[0].false_positive, q(0));
  EXPECT_EQ(dec[0].false_negative, q(0));
}

TEST(Enumeration, ProbabilityGrid) {
  EXPECT_EQ(probability_grid(2), (std::vector<Rational>{q(0), q(1, 2), q(1)}));
  EXPECT_EQ(probability_grid(3).size(), 5u);
}

TEST(Enumeration, DistributionsAreDistinctAndNormalized) {
  EnumerationBounds b;
  b.mass_denominator = 2;
  const auto ds = enumerate_distributions(b);
  // Eight cells: one unit of 1/1 (8 ways) plus two units of 1/2 (36 ways),
  // with the eight 2/2 tables already counted.
  EXPECT_EQ(ds.size(), 8u + 36u - 8u);
  std::set<std::vector<Rational>> seen;
  for (const auto& d : ds) {
    EXPECT_EQ(d.total(), q(1));
    std::vector<Rational> flat;
    for (const auto& [cell, m] : d.cells()) {
      flat.push_back(m[0]);
      flat.push_back(m[1]);
    }
    EXPECT_TRUE(seen.insert(flat).second);
  }
}

TEST(Enumeration, DefaultBoundsFindNoCounterexample) {
  const auto s = enumerate_verify(EnumerationBounds{});
  EXPECT_EQ(s.distributions, 442u);
  EXPECT_EQ(s.algorithms_per_distribution, 81u);
  EXPECT_EQ(s.examined, 442u * 81u);
  EXPECT_TRUE(s.counterexamples.empty());
  EXPECT_GT(s.satisfied_both, 0u);
  EXPECT_EQ(s.identity_failures, 0u);
  EXPECT_GT(s.identity_checks, 0u);
}

TEST(Enumeration, ThreadCountDoesNotChangeSummary) {
  EnumerationBounds b;
  b.mass_denominator = 3;
  const auto one = enumerate_verify(b, 1);
  const auto three = enumerate_verify(b, 3);
  EXPECT_EQ(one.examined, three.examined);
  EXPECT_EQ(one.satisfied_both, three.satisfied_both);
  EXPECT_EQ(one.perfect_predictor_count, three.perfect_predictor_count);
  EXPECT_EQ(one.convention_artifact_count, three.convention_artifact_count);
  EXPECT_EQ(one.identity_checks, three.identity_checks);
}

TEST(Enumeration, CostLimit) {
  EnumerationBounds b;
  b.mass_denominator = 12;
  b.prob_denominator = 6;
  b.max_pairs = 1000;
  EXPECT_GT(enumeration_cost(b), 1000.0);
  EXPECT_THROW(enumerate_verify(b), CostLimitError);
}

TEST(Enumeration, NeverHiringUsesConvention) {
  // Equal base rates, nobody hired: PPV is UNDEFINED in both groups.
  JointTable j;
  j.add({0}, {0}, true, q(1, 4));
  j.add({0}, {0}, false, q(1, 4));
  j.add({1}, {0}, true, q(1, 4));
  j.add({1}, {0}, false, q(1, 4));
  RandomizedAlgorithm alg;
  alg.set({0}, {0}, q(0));
  alg.set({1}, {0}, q(0));
  const auto gr = group_rates(j, alg);
  const auto pp = check_predictive_parity(gr);
  EXPECT_TRUE(pp.positive.satisfied);
  EXPECT_TRUE(pp.positive.undefined_match);
  EXPECT_TRUE(check_error_rate_balance(gr).combined.satisfied);
}

TEST(Enumeration, ProgressReported) {
  std::uint64_t last_done = 0, last_total = 0, calls = 0;
  EnumerationBounds b;
  b.mass_denominator = 2;
  enumerate_verify(b, 1, [&](std::uint64_t done, std::uint64_t total) {
    last_done = done;
    last_total = total;
    ++calls;
  });
  EXPECT_GE(calls, 1u);
  EXPECT_EQ(last_done, last_total);
}

}  // namespace
}  // namespace paritylens
