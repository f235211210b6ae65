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

#include "fixtures.hpp"
#include "paritylens/errors.hpp"
#include "paritylens/metrics.hpp"

namespace paritylens {
namespace {

using testing::q;

const GroupConfusion& group_named(const std::vector<GroupConfusion>& cs, const Dataset& d, const std::string& label) {
  const Profile p{*d.schema().sensitive[0].find(label)};
  for (const auto& c : cs) {
    if (c.group == p) return c;
  }
  throw std::runtime_error("no group " + label);
}

TEST(Confusion, HiringExampleUnderOptimalPolicy) {
  const Dataset d = testing::table1_dataset();
  const auto cs = confusion_by_group(d);
  ASSERT_EQ(cs.size(), 2u);
  const auto& m = group_named(cs, d, "M");
  EXPECT_EQ(m.tp, 4u);
  EXPECT_EQ(m.fp, 1u);
  EXPECT_EQ(m.fn, 1u);
  EXPECT_EQ(m.tn, 4u);
  const auto& f = group_named(cs, d, "F");
  EXPECT_EQ(f.tp + f.fp, 0u);
  EXPECT_EQ(f.total(), 10u);
}

TEST(Confusion, AllHiredHasNoNegatives) {
  const Dataset d = testing::make_dataset({{"a", "0", true, true, 3}, {"a", "1", false, true, 2}, {"b", "0", false, true, 4}});
  for (const auto& c : confusion_by_group(d)) {
    EXPECT_EQ(c.fn, 0u);
    EXPECT_EQ(c.tn, 0u);
  }
}

TEST(Confusion, PerfectDecisionsHaveNoErrors) {
  const Dataset d = testing::make_dataset({{"a", "0", true, true, 3}, {"a", "1", false, false, 2}});
  const auto cs = confusion_by_group(d);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].fp, 0u);
  EXPECT_EQ(cs[0].fn, 0u);
  const auto r = rates(cs[0]);
  EXPECT_EQ(*r.tpr, q(1));
  EXPECT_EQ(*r.tnr, q(1));
  EXPECT_EQ(*r.ppv, q(1));
  EXPECT_EQ(*r.npv, q(1));
}

TEST(Rates, FromCounts) {
  GroupConfusion c{{0}, 4, 1, 1, 4};
  const auto r = rates(c);
  EXPECT_EQ(*r.tpr, q(4, 5));
  EXPECT_EQ(*r.tnr, q(4, 5));
  EXPECT_EQ(*r.ppv, q(4, 5));
  EXPECT_EQ(*r.npv, q(4, 5));
  EXPECT_EQ(*r.base_rate, q(1, 2));
  EXPECT_EQ(*r.hire_rate, q(1, 2));
}

TEST(Rates, ZeroDenominatorIsUndefined) {
  GroupConfusion c{{0}, 0, 0, 3, 7};
  const auto r = rates(c);
  EXPECT_FALSE(r.ppv.has_value());
  EXPECT_EQ(*r.npv, q(7, 10));
  EXPECT_EQ(*r.tpr, q(0));
  EXPECT_EQ(*r.hire_rate, q(0));
}

TEST(Rates, MassConfusionMatchesCounts) {
  MassConfusion m{{0}, q(4, 10), q(1, 10), q(1, 10), q(4, 10)};
  GroupConfusion c{{0}, 4, 1, 1, 4};
  EXPECT_EQ(rates(m), rates(c));
}

TEST(Rates, JointAndAlgorithmPath) {
  const Dataset d = testing::table1_dataset();
  const auto joint = joint_distribution(d);
  const auto alg = empirical_algorithm(d);
  const auto masses = confusion_by_group(joint, alg);
  const auto counts = confusion_by_group(d);
  ASSERT_EQ(masses.size(), counts.size());
  for (std::size_t i = 0; i < masses.size(); ++i) EXPECT_EQ(rates(masses[i]), rates(counts[i]));
}

TEST(Rates, MissingAlgorithmCellIsDomainError) {
  const Dataset d = testing::table1_dataset();
  RandomizedAlgorithm partial;
  partial.set({0}, {0}, q(0));
  EXPECT_THROW(confusion_by_group(joint_distribution(d), partial), DomainError);
}

TEST(Identities, BayesAndFalsePositiveRate) {
  GroupConfusion c{{0}, 3, 2, 5, 10};
  const auto r = rates(c);
  EXPECT_TRUE(bayes_consistent(r));
  EXPECT_EQ(*false_positive_rate(r), q(2, 12));
  ASSERT_TRUE(chouldechova_holds(r).has_value());
  EXPECT_TRUE(*chouldechova_holds(r));
  GroupConfusion none_hired{{0}, 0, 0, 3, 7};
  EXPECT_FALSE(chouldechova_holds(rates(none_hired)).has_value());
}

}  // namespace
}  // namespace paritylens
