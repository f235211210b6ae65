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

// Group fairness criteria over per-group rate bundles or over a randomized
// decision table.
//
// UNDEFINED convention: two UNDEFINED rates compare equal; a defined rate
// against an UNDEFINED one is a violation with an UndefinedMismatch witness.
// Exact mode compares rationals with tolerance 0.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "paritylens/core.hpp"
#include "paritylens/metrics.hpp"
#include "paritylens/rational.hpp"

namespace paritylens {

enum class Criterion {
  kAntiClassification,
  kPosPredParity,
  kNegPredParity,
  kPredictiveParity,
  kPosErrorBalance,
  kNegErrorBalance,
  kErrorRateBalance,
  kDemographicParity,
  kCondDemographicParity,
};

inline constexpr std::array<Criterion, 9> kAllCriteria = {
    Criterion::kAntiClassification, Criterion::kPosPredParity,   Criterion::kNegPredParity,
    Criterion::kPredictiveParity,   Criterion::kPosErrorBalance, Criterion::kNegErrorBalance,
    Criterion::kErrorRateBalance,   Criterion::kDemographicParity,
    Criterion::kCondDemographicParity,
};

/// "ANTI_CLASSIFICATION", "POS_PRED_PARITY", ...
std::string_view criterion_name(Criterion c);

/// Accepts the canonical names (any case, '-' or '_') and short aliases:
/// ac, ppv, npv, pp, tpr, tnr, erb, dp, cdp.
std::optional<Criterion> parse_criterion(std::string_view text);

enum class Mode { kExact, kFloat };

/// Tolerance used by every floating-point comparison in the library.
inline constexpr double kFloatTolerance = 1e-9;

enum class WitnessKind { kValueGap, kUndefinedMismatch };

struct Witness {
  Profile group_a;
  Profile group_b;
  /// Set for anti-classification and conditional demographic parity.
  std::optional<Profile> permissible;
  Rate value_a;
  Rate value_b;
  WitnessKind kind = WitnessKind::kValueGap;
};

struct FairnessVerdict {
  Criterion criterion = Criterion::kAntiClassification;
  bool satisfied = true;
  std::optional<Witness> witness;  // present iff !satisfied
  Rational gap = 0;                // max |difference| over defined pairs
  Mode mode = Mode::kExact;
  /// Computed from observed decisions rather than a decision table.
  bool empirical = false;
  /// Some comparison passed only because both sides were UNDEFINED.
  bool undefined_match = false;
};

struct GroupRates {
  Profile group;
  RateBundle rates;
};

std::vector<GroupRates> group_rates(const Dataset& data);
std::vector<GroupRates> group_rates(const JointTable& joint, const RandomizedAlgorithm& alg);

/// Positive half, negative half, and their conjunction.
struct CriterionFamily {
  FairnessVerdict positive;
  FairnessVerdict negative;
  FairnessVerdict combined;
};

/// Equality of one rate across every pair of groups.
FairnessVerdict compare_across_groups(Criterion criterion, std::span<const GroupRates> groups,
                                      Rate RateBundle::*member);

CriterionFamily check_predictive_parity(std::span<const GroupRates> groups);
CriterionFamily check_error_rate_balance(std::span<const GroupRates> groups);
FairnessVerdict check_demographic_parity(std::span<const GroupRates> groups);

FairnessVerdict check_anti_classification(const RandomizedAlgorithm& alg);
FairnessVerdict check_conditional_demographic_parity(const RandomizedAlgorithm& alg);

/// Dataset forms use the empirical hire probability of each observed cell
/// and are flagged `empirical`.
FairnessVerdict check_anti_classification(const Dataset& data);
FairnessVerdict check_conditional_demographic_parity(const Dataset& data);

/// All nine criteria, in kAllCriteria order.
std::vector<FairnessVerdict> check_all(const Dataset& data);
std::vector<FairnessVerdict> check_all(const JointTable& joint, const RandomizedAlgorithm& alg);

/// Float-mode comparison of one rate (std::nullopt = UNDEFINED) across groups,
/// with tolerance `epsilon`. The gap is stored as the exact value of the
/// double difference.
struct FloatGroupRate {
  Profile group;
  std::optional<double> value;
};
FairnessVerdict compare_across_groups_float(Criterion criterion, std::span<const FloatGroupRate> groups,
                                            double epsilon = kFloatTolerance);

}  // namespace paritylens
