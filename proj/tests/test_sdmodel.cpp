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
#include "paritylens/fairness.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens::sd {
namespace {

using testing::q;

TEST(Threshold, Values) {
  EXPECT_EQ(optimal_threshold({q(1), q(-2)}), q(2, 3));
  EXPECT_EQ(optimal_threshold({q(5, 2), q(-5, 2)}), q(1, 2));
  EXPECT_EQ(optimal_threshold({q(3), q(-1)}), q(1, 4));
}

TEST(Threshold, InvalidPayoffsNameTheField) {
  try {
    optimal_threshold({q(0), q(-2)});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.field(), "B");
  }
  try {
    optimal_threshold({q(1), q(1, 2)});
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.field(), "omega");
  }
}

TEST(Posterior, MiddleScoreEqualsPrevalence) {
  const auto s = PhelpsianScenario::prevalence(q(3, 10), q(1, 2), q(1, 2));
  EXPECT_EQ(posterior(s, Gender::kMale, 2), q(3, 10));
  EXPECT_EQ(posterior(s, Gender::kMale, 1), q(0));
  EXPECT_EQ(posterior(s, Gender::kMale, 3), q(1));
  const auto t = PhelpsianScenario::precision(q(3, 5), q(1, 2), q(9, 10));
  EXPECT_EQ(posterior(t, Gender::kFemale, 2), q(3, 5));
  EXPECT_EQ(posterior(t, Gender::kFemale, 1), q(0));
}

TEST(Posterior, AgreesWithJointTable) {
  const auto s = PhelpsianScenario::prevalence(q(2, 7), q(5, 9), q(1, 3));
  const auto joint = scenario_joint(s);
  EXPECT_EQ(joint.total(), q(1));
  for (auto g : kGenders)
    for (int x = 1; x <= 3; ++x) EXPECT_EQ(*joint.posterior(gender_profile(g), score_profile(x)), posterior(s, g, x));
}

TEST(OptimalPolicy, PrevalenceStraddlingThreshold) {
  const auto s = PhelpsianScenario::prevalence(q(1, 2), q(4, 5), q(1, 2));
  const auto p = optimal_policy(s);
  EXPECT_EQ(p.d_m, q(0));
  EXPECT_EQ(p.d_f, q(1));
  EXPECT_FALSE(check_anti_classification(policy_algorithm(p)).satisfied);
}

TEST(OptimalPolicy, IdenticalGroups) {
  const auto s = PhelpsianScenario::prevalence(q(4, 5), q(4, 5), q(1, 2));
  EXPECT_EQ(optimal_policy(s), (HiringPolicy{q(1), q(1)}));
}

TEST(OptimalPolicy, PrecisionVariantIsGenderBlind) {
  for (int i = 1; i < 10; ++i) {
    const auto s = PhelpsianScenario::precision(q(i, 10), q(1, 5), q(4, 5));
    const auto p = optimal_policy(s);
    EXPECT_EQ(p.d_m, p.d_f);
  }
}

TEST(OptimalPolicy, TieHires) {
  const auto s = PhelpsianScenario::prevalence(q(2, 3), q(1, 3), q(1, 2));
  const auto p = optimal_policy(s);
  EXPECT_EQ(p.d_m, q(1));
  EXPECT_EQ(p.d_f, q(0));
}

TEST(DecisionRule, HiringExampleTableTwo) {
  const Dataset d = testing::table1_dataset();
  const auto joint = joint_distribution(d);
  PosteriorTable beliefs;
  for (const auto& [cell, m] : joint.cells()) beliefs[cell] = *joint.posterior(cell.sensitive, cell.permissible);
  const auto rule = optimal_decision_rule(beliefs, {q(1), q(-2)});
  const auto& s = d.schema();
  for (const auto& [cell, p] : rule.table()) {
    const bool hire = s.sensitive_label(cell.sensitive) == "M" && s.permissible_label(cell.permissible) == "1";
    EXPECT_EQ(p, hire ? q(1) : q(0));
  }
  EXPECT_EQ(rule.table().size(), 4u);
}

TEST(DecisionRule, ThresholdBelowAllBeliefsHiresEveryone) {
  PosteriorTable beliefs{{{{0}, {0}}, q(1, 5)}, {{{1}, {0}}, q(2, 5)}};
  const auto rule = optimal_decision_rule(beliefs, {q(9), q(-1)});
  for (const auto& [cell, p] : rule.table()) EXPECT_EQ(p, q(1));
}

TEST(DecisionRule, BoundaryHires) {
  PosteriorTable beliefs{{{{0}, {0}}, q(2, 3)}, {{{1}, {0}}, q(1, 2)}};
  const auto rule = optimal_decision_rule(beliefs, {q(1), q(-2)});
  EXPECT_EQ(*rule.probability({0}, {0}), q(1));
  EXPECT_EQ(*rule.probability({1}, {0}), q(0));
}

TEST(ModelRates, HalfEverything) {
  const auto s = PhelpsianScenario::prevalence(q(1, 2), q(1, 2), q(1, 2));
  const auto r = model_rates(s, {q(1, 2), q(1, 2)});
  for (auto g : kGenders) {
    EXPECT_EQ(*r[g].tpr, q(3, 4));
    EXPECT_EQ(*r[g].tnr, q(3, 4));
    EXPECT_EQ(*r[g].ppv, q(3, 4));
  }
}

TEST(ModelRates, NeverHiringMuddled) {
  const auto s = PhelpsianScenario::prevalence(q(1, 3), q(3, 5), q(2, 5));
  const auto r = model_rates(s, {q(0), q(0)});
  for (auto g : kGenders) {
    EXPECT_EQ(*r[g].tpr, s.phi);
    EXPECT_EQ(*r[g].tnr, q(1));
    EXPECT_EQ(*r[g].ppv, q(1));
  }
  const auto all = model_rates(s, {q(1), q(1)});
  for (auto g : kGenders) EXPECT_EQ(*all[g].tnr, s.phi);
}

TEST(ModelRates, GenderBlindClosedForms) {
  const auto s = PhelpsianScenario::prevalence(q(1, 4), q(2, 3), q(3, 7));
  const Rational d = q(2, 5);
  const auto r = model_rates(s, {d, d});
  for (auto g : kGenders) {
    EXPECT_EQ(*r[g].tpr, s.phi + (1 - s.phi) * d);
    EXPECT_EQ(*r[g].tnr, 1 - d * (1 - s.phi));
  }
}

TEST(ModelRates, MatchJointTableRates) {
  const auto s = PhelpsianScenario::precision(q(3, 8), q(1, 5), q(2, 3));
  const HiringPolicy p{q(1, 3), q(3, 4)};
  const auto r = model_rates(s, p);
  const auto gr = group_rates(scenario_joint(s), policy_algorithm(p));
  for (const auto& g : gr) {
    const auto& m = g.group == gender_profile(Gender::kMale) ? r.male : r.female;
    EXPECT_EQ(g.rates.ppv, m.ppv);
    EXPECT_EQ(g.rates.npv, m.npv);
    EXPECT_EQ(g.rates.tpr, m.tpr);
    EXPECT_EQ(g.rates.tnr, m.tnr);
    EXPECT_EQ(g.rates.hire_rate, m.hire_rate);
  }
}

TEST(ModelRates, DegeneratePrevalence) {
  const auto s = PhelpsianScenario::prevalence(q(0), q(1), q(1, 2));
  const auto r = model_rates(s, {q(1, 2), q(1, 2)});
  EXPECT_FALSE(r.male.tpr.has_value());
  EXPECT_FALSE(r.female.tnr.has_value());
}

TEST(Scenario, ValidationNamesField) {
  try {
    PhelpsianScenario::prevalence(q(1, 2), q(3, 2), q(1, 2));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.field(), "p_f");
  }
  HiringPolicy bad{q(2), q(0)};
  try {
    bad.validate();
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.field(), "d_m");
  }
}

TEST(Mobius, CurvesMatchModelRates) {
  const auto s = PhelpsianScenario::prevalence(q(1, 3), q(3, 4), q(2, 5));
  for (auto c : {Criterion::kPosPredParity, Criterion::kNegPredParity, Criterion::kPosErrorBalance,
                 Criterion::kNegErrorBalance, Criterion::kDemographicParity}) {
    for (auto g : kGenders) {
      const auto curve = rate_curve(s, g, c);
      for (int k = 0; k <= 4; ++k) {
        const Rational d = q(k, 4);
        HiringPolicy p{d, d};
        const auto r = model_rates(s, p)[g];
        const Rate expected = c == Criterion::kPosPredParity    ? r.ppv
                              : c == Criterion::kNegPredParity  ? r.npv
                              : c == Criterion::kPosErrorBalance ? r.tpr
                              : c == Criterion::kNegErrorBalance ? r.tnr
                                                                 : r.hire_rate;
        EXPECT_EQ(curve.at(d), expected);
      }
    }
  }
}

TEST(Mobius, SolveInvertsAt) {
  const auto s = PhelpsianScenario::prevalence(q(1, 3), q(3, 4), q(2, 5));
  const auto curve = rate_curve(s, Gender::kFemale, Criterion::kPosPredParity);
  const Rate target = curve.at(q(3, 7));
  const auto sol = curve.solve(target);
  ASSERT_EQ(sol.kind, MobiusRate::Solutions::kOne);
  EXPECT_EQ(sol.root, q(3, 7));
}

}  // namespace
}  // namespace paritylens::sd
