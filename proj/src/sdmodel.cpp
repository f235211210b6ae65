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

#include "paritylens/sdmodel.hpp"

#include <algorithm>
#include <cmath>

#include "paritylens/errors.hpp"

namespace paritylens::sd {

void EmployerPayoffs::validate() const {
  if (benefit <= 0) throw DomainError("B", "benefit of hiring a qualified worker must be positive");
  if (penalty >= 0) throw DomainError("omega", "payoff of hiring an unqualified worker must be negative");
}

Rational optimal_threshold(const EmployerPayoffs& payoffs) {
  payoffs.validate();
  return Rational(-payoffs.penalty / (payoffs.benefit - payoffs.penalty));
}

std::string_view gender_label(Gender g) { return g == Gender::kMale ? "m" : "f"; }

std::string_view variant_name(Variant v) { return v == Variant::kPrevalence ? "PREVALENCE" : "PRECISION"; }

PhelpsianScenario PhelpsianScenario::prevalence(Rational p_m, Rational p_f, Rational phi, EmployerPayoffs payoffs) {
  PhelpsianScenario s;
  s.variant = Variant::kPrevalence;
  s.p_m = std::move(p_m);
  s.p_f = std::move(p_f);
  s.phi = std::move(phi);
  s.payoffs = std::move(payoffs);
  s.validate();
  return s;
}

PhelpsianScenario PhelpsianScenario::precision(Rational p_tilde, Rational phi_m, Rational phi_f,
                                               EmployerPayoffs payoffs) {
  PhelpsianScenario s;
  s.variant = Variant::kPrecision;
  s.p_tilde = std::move(p_tilde);
  s.phi_m = std::move(phi_m);
  s.phi_f = std::move(phi_f);
  s.payoffs = std::move(payoffs);
  s.validate();
  return s;
}

const Rational& PhelpsianScenario::prevalence_of(Gender g) const {
  if (variant == Variant::kPrecision) return p_tilde;
  return g == Gender::kMale ? p_m : p_f;
}

const Rational& PhelpsianScenario::precision_of(Gender g) const {
  if (variant == Variant::kPrevalence) return phi;
  return g == Gender::kMale ? phi_m : phi_f;
}

namespace {

void check_probability(const Rational& v, const char* field) {
  if (v < 0 || v > 1) throw DomainError(field, "must lie in [0, 1]");
}

}  // namespace

void PhelpsianScenario::validate() const {
  if (variant == Variant::kPrevalence) {
    check_probability(p_m, "p_m");
    check_probability(p_f, "p_f");
    check_probability(phi, "phi");
  } else {
    check_probability(p_tilde, "p_tilde");
    check_probability(phi_m, "phi_m");
    check_probability(phi_f, "phi_f");
  }
  check_probability(male_share, "gender_split");
  payoffs.validate();
}

bool PhelpsianScenario::degenerate() const {
  auto edge = [](const Rational& v) { return v == 0 || v == 1; };
  for (auto g : kGenders) {
    if (edge(prevalence_of(g)) || edge(precision_of(g))) return true;
  }
  return false;
}

void HiringPolicy::validate() const {
  check_probability(d_m, "d_m");
  check_probability(d_f, "d_f");
}

namespace {

// P[x | y] for the three-valued test.
Rational score_likelihood(int score, bool qualified, const Rational& phi) {
  switch (score) {
    case 1: return qualified ? Rational(0) : phi;
    case 2: return Rational(1 - phi);
    case 3: return qualified ? phi : Rational(0);
    default: throw DomainError("score", "must be 1, 2 or 3");
  }
}

}  // namespace

Rational posterior(const PhelpsianScenario& s, Gender g, int score) {
  const Rational& p = s.prevalence_of(g);
  const Rational& phi = s.precision_of(g);
  Rational num = p * score_likelihood(score, true, phi);
  Rational den = num + (1 - p) * score_likelihood(score, false, phi);
  if (den == 0) {
    if (score == 1) return 0;
    if (score == 3) return 1;
    return p;
  }
  return Rational(num / den);
}

HiringPolicy optimal_policy(const PhelpsianScenario& s) {
  s.validate();
  const Rational threshold = optimal_threshold(s.payoffs);
  HiringPolicy pol;
  pol.d_m = posterior(s, Gender::kMale, 2) >= threshold ? 1 : 0;
  pol.d_f = posterior(s, Gender::kFemale, 2) >= threshold ? 1 : 0;
  return pol;
}

RandomizedAlgorithm optimal_decision_rule(const PosteriorTable& beliefs, const EmployerPayoffs& payoffs) {
  const Rational threshold = optimal_threshold(payoffs);
  RandomizedAlgorithm alg;
  for (const auto& [cell, belief] : beliefs) {
    alg.set(cell.sensitive, cell.permissible, belief >= threshold ? 1 : 0);
  }
  return alg;
}

ModelRates model_rates(const PhelpsianScenario& s, const HiringPolicy& policy) {
  s.validate();
  policy.validate();
  auto one = [&](Gender g) {
    const Rational& p = s.prevalence_of(g);
    const Rational& phi = s.precision_of(g);
    const Rational& d = policy.muddled(g);
    GenderRates r;
    const Rational hired_if_qualified = phi + d * (1 - phi);
    const Rational hired_if_unqualified = d * (1 - phi);
    r.hire_rate = Rational(p * hired_if_qualified + (1 - p) * hired_if_unqualified);
    if (p > 0) r.tpr = Rational(d + phi * (1 - d));
    if (p < 1) r.tnr = Rational(1 - d * (1 - phi));
    r.ppv = safe_ratio(p * hired_if_qualified, p * hired_if_qualified + (1 - p) * hired_if_unqualified);
    const Rational not_hired = 1 - *r.hire_rate;
    const Rational tn_mass = p < 1 ? Rational(*r.tnr * (1 - p)) : Rational(0);
    r.npv = safe_ratio(tn_mass, not_hired);
    return r;
  };
  return ModelRates{one(Gender::kMale), one(Gender::kFemale)};
}

Schema model_schema() {
  Schema s;
  s.sensitive.emplace_back("gender", std::vector<std::string>{"m", "f"});
  s.permissible.emplace_back("score", std::vector<std::string>{"1", "2", "3"});
  s.outcome = "qualified";
  s.decision = "hired";
  return s;
}

Profile gender_profile(Gender g) { return Profile{static_cast<TraitId>(g)}; }

Profile score_profile(int score) {
  if (score < 1 || score > 3) throw DomainError("score", "must be 1, 2 or 3");
  return Profile{static_cast<TraitId>(score - 1)};
}

JointTable scenario_joint(const PhelpsianScenario& s) {
  s.validate();
  JointTable joint;
  for (auto g : kGenders) {
    const Rational share = g == Gender::kMale ? s.male_share : Rational(1 - s.male_share);
    const Rational& p = s.prevalence_of(g);
    const Rational& phi = s.precision_of(g);
    for (int score = 1; score <= 3; ++score) {
      joint.add(gender_profile(g), score_profile(score), false, share * (1 - p) * score_likelihood(score, false, phi));
      joint.add(gender_profile(g), score_profile(score), true, share * p * score_likelihood(score, true, phi));
    }
  }
  return joint;
}

PosteriorTable scenario_posteriors(const PhelpsianScenario& s) {
  PosteriorTable t;
  for (auto g : kGenders) {
    for (int score = 1; score <= 3; ++score) {
      t.emplace(CellKey{gender_profile(g), score_profile(score)}, posterior(s, g, score));
    }
  }
  return t;
}

RandomizedAlgorithm policy_algorithm(const HiringPolicy& policy) {
  policy.validate();
  RandomizedAlgorithm alg;
  for (auto g : kGenders) {
    alg.set(gender_profile(g), score_profile(1), 0);
    alg.set(gender_profile(g), score_profile(2), policy.muddled(g));
    alg.set(gender_profile(g), score_profile(3), 1);
  }
  return alg;
}

Rate MobiusRate::at(const Rational& d) const {
  return safe_ratio(a + b * d, c + e * d);
}

std::optional<double> MobiusRate::at(double d) const {
  const double den = c.get_d() + e.get_d() * d;
  if (den == 0.0) return std::nullopt;
  return (a.get_d() + b.get_d() * d) / den;
}

MobiusRate::Solve MobiusRate::solve(const Rate& target) const {
  Solve out;
  if (!target) {
    if (e == 0) {
      out.kind = c == 0 ? Solutions::kAll : Solutions::kNone;
      return out;
    }
    Rational root = -c / e;
    if (root >= 0 && root <= 1) {
      out.kind = Solutions::kOne;
      out.root = root;
    }
    return out;
  }
  const Rational slope = b - *target * e;
  const Rational rhs = *target * c - a;
  if (slope == 0) {
    out.kind = rhs == 0 ? Solutions::kAll : Solutions::kNone;
    return out;
  }
  Rational root = rhs / slope;
  if (root >= 0 && root <= 1 && c + e * root != 0) {
    out.kind = Solutions::kOne;
    out.root = root;
  }
  return out;
}

std::optional<double> MobiusRate::solve(double target) const {
  const double slope = b.get_d() - target * e.get_d();
  const double rhs = target * c.get_d() - a.get_d();
  if (slope == 0.0) return std::nullopt;
  double root = rhs / slope;
  constexpr double kSlack = 1e-12;
  if (root < -kSlack || root > 1 + kSlack) return std::nullopt;
  return std::clamp(root, 0.0, 1.0);
}

MobiusRate rate_curve(const PhelpsianScenario& s, Gender g, Criterion criterion) {
  const Rational& p = s.prevalence_of(g);
  const Rational& phi = s.precision_of(g);
  const Rational q = 1 - phi;
  switch (criterion) {
    case Criterion::kPosPredParity: return {p * phi, p * q, p * phi, q};
    case Criterion::kNegPredParity: return {1 - p, -(1 - p) * q, 1 - p * phi, -q};
    case Criterion::kPosErrorBalance: return {p * phi, p * q, p, 0};
    case Criterion::kNegErrorBalance: return {1 - p, -(1 - p) * q, 1 - p, 0};
    case Criterion::kDemographicParity: return {p * phi, q, 1, 0};
    default: throw DomainError("goal", "criterion is not a single rate");
  }
}

}  // namespace paritylens::sd
