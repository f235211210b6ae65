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

#pragma once

// Employer-worker hiring model with a three-valued test score.
//
// A worker has gender a in {m, f}, qualification y in {0, 1} and score
// x in {1, 2, 3}. Given y, x = 1 (y = 0) or x = 3 (y = 1) with probability
// phi and x = 2 otherwise, so x = 2 carries no information about y. The
// PREVALENCE variant has gender-specific base rates and one precision phi;
// the PRECISION variant has one base rate and gender-specific precisions.

#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "paritylens/core.hpp"
#include "paritylens/fairness.hpp"
#include "paritylens/rational.hpp"

namespace paritylens::sd {

/// Payoff B > 0 for hiring a qualified worker, omega < 0 for hiring an
/// unqualified one, 0 for not hiring.
struct EmployerPayoffs {
  Rational benefit = 1;
  Rational penalty = -2;

  /// Throws DomainError naming "B" or "omega".
  void validate() const;
};

/// -omega / (B - omega), strictly inside (0, 1).
Rational optimal_threshold(const EmployerPayoffs& payoffs);

enum class Gender { kMale = 0, kFemale = 1 };
inline constexpr std::array<Gender, 2> kGenders = {Gender::kMale, Gender::kFemale};
std::string_view gender_label(Gender g);

enum class Variant { kPrevalence, kPrecision };
std::string_view variant_name(Variant v);

struct PhelpsianScenario {
  Variant variant = Variant::kPrevalence;
  // PREVALENCE
  Rational p_m = 0;
  Rational p_f = 0;
  Rational phi = 0;
  // PRECISION
  Rational p_tilde = 0;
  Rational phi_m = 0;
  Rational phi_f = 0;

  EmployerPayoffs payoffs;
  /// P[a = m]; only affects pooled quantities and simulation.
  Rational male_share = Rational(1, 2);

  static PhelpsianScenario prevalence(Rational p_m, Rational p_f, Rational phi, EmployerPayoffs payoffs = {});
  static PhelpsianScenario precision(Rational p_tilde, Rational phi_m, Rational phi_f,
                                     EmployerPayoffs payoffs = {});

  /// Base rate of `g`.
  const Rational& prevalence_of(Gender g) const;
  /// Test precision for `g`.
  const Rational& precision_of(Gender g) const;

  /// Throws DomainError naming the offending field.
  void validate() const;
  /// A precision in {0, 1} or a base rate in {0, 1}.
  bool degenerate() const;
};

/// Hire probabilities at the muddled score x = 2. Score 3 is always hired,
/// score 1 never.
struct HiringPolicy {
  Rational d_m = 0;
  Rational d_f = 0;

  const Rational& muddled(Gender g) const { return g == Gender::kMale ? d_m : d_f; }
  void validate() const;
  bool operator==(const HiringPolicy&) const = default;
};

/// P[y = 1 | a, x] by Bayes' rule. At an observation with zero probability
/// (e.g. x = 2 when phi = 1) returns the continuous extension 0, p, 1.
Rational posterior(const PhelpsianScenario& s, Gender g, int score);

/// Threshold rule on the muddled-score posterior.
HiringPolicy optimal_policy(const PhelpsianScenario& s);

/// Beliefs P[y = 1 | a, x] keyed by cell.
using PosteriorTable = std::map<CellKey, Rational>;

/// delta(a, x) = 1 iff belief >= threshold (ties hire).
RandomizedAlgorithm optimal_decision_rule(const PosteriorTable& beliefs, const EmployerPayoffs& payoffs);

struct GenderRates {
  Rate ppv;
  Rate npv;
  Rate tpr;
  Rate tnr;
  Rate hire_rate;
};

struct ModelRates {
  GenderRates male;
  GenderRates female;
  const GenderRates& operator[](Gender g) const { return g == Gender::kMale ? male : female; }
};

/// Closed forms for the policy family. NPV is obtained from TNR through
/// NPV * (1 - hire) = TNR * (1 - base).
ModelRates model_rates(const PhelpsianScenario& s, const HiringPolicy& policy);

/// Schema of model datasets: sensitive "gender" {m, f}, permissible
/// "score" {1, 2, 3}, outcome "qualified", decision "hired".
Schema model_schema();
Profile gender_profile(Gender g);
Profile score_profile(int score);

/// Joint over (gender, score, y) using male_share for the gender split.
JointTable scenario_joint(const PhelpsianScenario& s);
PosteriorTable scenario_posteriors(const PhelpsianScenario& s);
RandomizedAlgorithm policy_algorithm(const HiringPolicy& policy);

/// A rate as a function of the muddled-score hire probability d:
/// (a + b d) / (c + e d). UNDEFINED where the denominator vanishes.
struct MobiusRate {
  Rational a, b, c, e;

  Rate at(const Rational& d) const;
  std::optional<double> at(double d) const;

  enum class Solutions { kNone, kOne, kAll };
  struct Solve {
    Solutions kind = Solutions::kNone;
    Rational root;
  };
  /// Solves rate(d) == target over d in [0, 1] exactly (linear in d).
  /// An UNDEFINED target matches the points where the rate is UNDEFINED.
  Solve solve(const Rate& target) const;
  /// Floating-point counterpart of solve() for a defined target.
  std::optional<double> solve(double target) const;
};

/// The rate compared by `criterion` (PPV, NPV, TPR, TNR or hire rate) as a
/// function of d for gender g. Throws DomainError for criteria that are not
/// a single rate.
MobiusRate rate_curve(const PhelpsianScenario& s, Gender g, Criterion criterion);

struct SimulationOptions {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Records per independently seeded chunk. Output depends on this value
  /// but not on `threads`.
  std::uint64_t chunk_size = 1 << 16;
};

/// Draws gender, then y, then the score, then the decision. Identical
/// records within a chunk are merged into one weighted record, so the
/// result stays small. Throws DomainError when n == 0.
Dataset simulate(const PhelpsianScenario& s, const HiringPolicy& policy, const SimulationOptions& options);

}  // namespace paritylens::sd
