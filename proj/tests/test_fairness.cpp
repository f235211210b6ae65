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
#include "paritylens/fairness.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens {
namespace {

using testing::q;

const FairnessVerdict& verdict(const std::vector<FairnessVerdict>& vs, Criterion c) {
  for (const auto& v : vs) {
    if (v.criterion == c) return v;
  }
  throw std::runtime_error("missing verdict");
}

void expect_consistent(const FairnessVerdict& v) {
  EXPECT_EQ(v.satisfied, !v.witness.has_value()) << criterion_name(v.criterion);
}

TEST(Criterion, NamesAndAliases) {
  EXPECT_EQ(criterion_name(Criterion::kErrorRateBalance), "ERROR_RATE_BALANCE");
  EXPECT_EQ(*parse_criterion("erb"), Criterion::kErrorRateBalance);
  EXPECT_EQ(*parse_criterion("pp"), Criterion::kPredictiveParity);
  EXPECT_EQ(*parse_criterion("ppv"), Criterion::kPosPredParity);
  EXPECT_EQ(*parse_criterion("POS_PRED_PARITY"), Criterion::kPosPredParity);
  EXPECT_FALSE(parse_criterion("calibration").has_value());
  for (auto c : kAllCriteria) EXPECT_EQ(*parse_criterion(criterion_name(c)), c);
}

TEST(HiringExample, OptimalPolicyViolatesBalanceAndParity) {
  const auto vs = check_all(testing::table1_dataset());
  ASSERT_EQ(vs.size(), kAllCriteria.size());
  for (const auto& v : vs) expect_consistent(v);
  const auto& erb = verdict(vs, Criterion::kErrorRateBalance);
  EXPECT_FALSE(erb.satisfied);
  EXPECT_EQ(erb.gap, q(4, 5));
  EXPECT_EQ(*erb.witness->value_a, q(4, 5));
  EXPECT_EQ(*erb.witness->value_b, q(0));
  const auto& dp = verdict(vs, Criterion::kDemographicParity);
  EXPECT_FALSE(dp.satisfied);
  EXPECT_EQ(dp.gap, q(1, 2));
  const auto& ac = verdict(vs, Criterion::kAntiClassification);
  EXPECT_FALSE(ac.satisfied);
  ASSERT_TRUE(ac.witness->permissible.has_value());
  EXPECT_TRUE(ac.empirical);
}

TEST(HiringExample, AntiClassificationWitnessAtScoreOne) {
  const Dataset d = testing::table1_dataset();
  const auto v = check_anti_classification(empirical_algorithm(d));
  ASSERT_FALSE(v.satisfied);
  const auto& s = d.schema();
  EXPECT_EQ(s.sensitive_label(v.witness->group_a), "M");
  EXPECT_EQ(s.sensitive_label(v.witness->group_b), "F");
  EXPECT_EQ(s.permissible_label(*v.witness->permissible), "1");
  EXPECT_FALSE(v.empirical);
}

TEST(AntiClassification, ConstantAlgorithmSatisfied) {
  RandomizedAlgorithm alg;
  for (TraitId a = 0; a < 2; ++a)
    for (TraitId x = 0; x < 3; ++x) alg.set({a}, {x}, q(1, 2));
  EXPECT_TRUE(check_anti_classification(alg).satisfied);
  EXPECT_TRUE(check_conditional_demographic_parity(alg).satisfied);
}

TEST(AntiClassification, EqualMuddledProbabilitySatisfied) {
  const auto alg = sd::policy_algorithm({q(2, 7), q(2, 7)});
  EXPECT_TRUE(check_anti_classification(alg).satisfied);
  const auto unequal = sd::policy_algorithm({q(1), q(0)});
  const auto v = check_anti_classification(unequal);
  EXPECT_FALSE(v.satisfied);
  EXPECT_EQ(*v.witness->permissible, sd::score_profile(2));
  const auto c = check_conditional_demographic_parity(unequal);
  EXPECT_FALSE(c.satisfied);
  EXPECT_EQ(*c.witness->permissible, sd::score_profile(2));
}

TEST(PredictiveParity, CalibratedButUnbalancedConstruction) {
  // Search small count tables for PPV equality with unequal TPR at base
  // rates 1/2 (8 people) and 1/4 (8 people).
  std::optional<std::pair<GroupConfusion, GroupConfusion>> found;
  for (std::uint64_t tp1 = 0; tp1 <= 4 && !found; ++tp1)
    for (std::uint64_t fp1 = 0; fp1 <= 4 && !found; ++fp1)
      for (std::uint64_t tp2 = 0; tp2 <= 2 && !found; ++tp2)
        for (std::uint64_t fp2 = 0; fp2 <= 6 && !found; ++fp2) {
          GroupConfusion g1{{0}, tp1, fp1, 4 - tp1, 4 - fp1};
          GroupConfusion g2{{1}, tp2, fp2, 2 - tp2, 6 - fp2};
          const auto r1 = rates(g1), r2 = rates(g2);
          if (r1.ppv && r2.ppv && *r1.ppv == *r2.ppv && *r1.tpr != *r2.tpr) found = {{g1, g2}};
        }
  ASSERT_TRUE(found.has_value());
  std::vector<GroupRates> groups = {{found->first.group, rates(found->first)},
                                    {found->second.group, rates(found->second)}};
  EXPECT_TRUE(check_predictive_parity(groups).positive.satisfied);
  EXPECT_FALSE(check_error_rate_balance(groups).combined.satisfied);
}

TEST(PredictiveParity, GenderBlindModelViolatedWithUnequalPrevalence) {
  const auto s = sd::PhelpsianScenario::prevalence(q(1, 5), q(1, 2), q(3, 5));
  for (const auto& d : {q(1, 10), q(1, 2), q(1)}) {
    const auto vs = check_all(sd::scenario_joint(s), sd::policy_algorithm({d, d}));
    EXPECT_FALSE(verdict(vs, Criterion::kPredictiveParity).satisfied);
    EXPECT_FALSE(verdict(vs, Criterion::kPosPredParity).satisfied);
  }
}

TEST(ErrorRateBalance, GenderBlindModelSatisfied) {
  const auto s = sd::PhelpsianScenario::prevalence(q(1, 5), q(1, 2), q(3, 5));
  const Rational d = q(1, 3);
  const auto joint = sd::scenario_joint(s);
  const auto vs = check_all(joint, sd::policy_algorithm({d, d}));
  EXPECT_TRUE(verdict(vs, Criterion::kErrorRateBalance).satisfied);
  for (const auto& g : group_rates(joint, sd::policy_algorithm({d, d}))) {
    EXPECT_EQ(*g.rates.tpr, s.phi + (1 - s.phi) * d);
    EXPECT_EQ(*g.rates.tnr, 1 - d * (1 - s.phi));
  }
}

TEST(ErrorRateBalance, PerfectPredictorSatisfied) {
  const Dataset d = testing::make_dataset(
      {{"a", "0", false, false, 3}, {"a", "1", true, true, 2}, {"b", "0", false, false, 1}, {"b", "1", true, true, 4}});
  const auto vs = check_all(d);
  EXPECT_TRUE(verdict(vs, Criterion::kErrorRateBalance).satisfied);
  EXPECT_TRUE(verdict(vs, Criterion::kPredictiveParity).satisfied);
}

TEST(ErrorRateBalance, SymmetricGroupsSatisfied) {
  const Dataset d = testing::make_dataset({{"a", "0", false, false, 3},
                                           {"a", "1", true, true, 2},
                                           {"a", "1", false, true, 1},
                                           {"b", "0", false, false, 3},
                                           {"b", "1", true, true, 2},
                                           {"b", "1", false, true, 1}});
  const auto vs = check_all(d);
  for (const auto& v : vs) EXPECT_TRUE(v.satisfied) << criterion_name(v.criterion);
}

TEST(DemographicParity, UniformThirtyPercentSatisfied) {
  JointTable j;
  j.add({0}, {0}, true, q(1, 5));
  j.add({0}, {1}, false, q(3, 10));
  j.add({1}, {0}, false, q(1, 10));
  j.add({1}, {1}, true, q(2, 5));
  RandomizedAlgorithm alg;
  for (TraitId a = 0; a < 2; ++a)
    for (TraitId x = 0; x < 2; ++x) alg.set({a}, {x}, q(3, 10));
  const auto vs = check_all(j, alg);
  EXPECT_TRUE(verdict(vs, Criterion::kDemographicParity).satisfied);
  EXPECT_TRUE(verdict(vs, Criterion::kAntiClassification).satisfied);
}

TEST(ConditionalDemographicParity, AgreesWithAntiClassification) {
  for (int i = 0; i < 9; ++i) {
    const auto alg = sd::policy_algorithm({q(i % 3, 2), q(i / 3, 2)});
    EXPECT_EQ(check_anti_classification(alg).satisfied, check_conditional_demographic_parity(alg).satisfied);
  }
}

TEST(Convention, UndefinedMatchAndMismatch) {
  GroupRates a{{0}, {}};
  GroupRates b{{1}, {}};
  a.rates.ppv = std::nullopt;
  b.rates.ppv = std::nullopt;
  std::vector<GroupRates> both = {a, b};
  auto v = compare_across_groups(Criterion::kPosPredParity, both, &RateBundle::ppv);
  EXPECT_TRUE(v.satisfied);
  EXPECT_TRUE(v.undefined_match);
  b.rates.ppv = q(1, 2);
  std::vector<GroupRates> one = {a, b};
  v = compare_across_groups(Criterion::kPosPredParity, one, &RateBundle::ppv);
  EXPECT_FALSE(v.satisfied);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->kind, WitnessKind::kUndefinedMismatch);
}

TEST(FloatMode, ToleranceApplies) {
  std::vector<FloatGroupRate> close = {{{0}, 0.5}, {{1}, 0.5 + 1e-12}};
  EXPECT_TRUE(compare_across_groups_float(Criterion::kPosPredParity, close).satisfied);
  std::vector<FloatGroupRate> far = {{{0}, 0.5}, {{1}, 0.5 + 1e-6}};
  const auto v = compare_across_groups_float(Criterion::kPosPredParity, far);
  EXPECT_FALSE(v.satisfied);
  EXPECT_EQ(v.mode, Mode::kFloat);
}

}  // namespace
}  // namespace paritylens
