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

// Side conditions of the predictive-parity / error-rate-balance
// impossibility result, the four-cell rate decomposition, and an exhaustive
// check of the result over small rational grids.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "paritylens/core.hpp"
#include "paritylens/fairness.hpp"
#include "paritylens/rational.hpp"

namespace paritylens {

struct TheoremConditions {
  /// Every positive-mass cell has P[y=1 | a, x] in {0, 1}.
  bool perfect_predictor = false;
  /// P[y=1 | a] is the same for every group with positive mass.
  bool equal_base_rates = false;
  std::map<CellKey, Rational> posteriors;
  std::map<Profile, Rational> base_rates;
  /// Cells present in the table with zero mass; their posterior is omitted.
  std::vector<CellKey> zero_mass_cells;
};

TheoremConditions theorem_conditions(const JointTable& joint);

/// Joint masses P[y, delta | a] for one group and the four rates recomputed
/// from them as ratio-of-masses.
struct DecomposedRates {
  Profile group;
  Rational true_positive;
  Rational false_positive;
  Rational false_negative;
  Rational true_negative;
  Rate ppv;
  Rate tpr;
  Rate npv;
  Rate tnr;

  /// Once TP, FP and FN are fixed the fourth cell is 1 minus their sum.
  bool fourth_from_three() const {
    return true_negative == 1 - (true_positive + false_positive + false_negative);
  }
};

std::vector<DecomposedRates> decompose_rates(const JointTable& joint, const RandomizedAlgorithm& alg);

struct EnumerationBounds {
  unsigned groups = 2;
  unsigned x_arity = 2;
  /// Joint masses are k/d for every common denominator d in 1..mass_denominator.
  unsigned mass_denominator = 4;
  /// Hire probabilities are j/g for every g in 1..prob_denominator.
  unsigned prob_denominator = 2;
  /// Refuse to run above this many (distribution, algorithm) pairs.
  std::uint64_t max_pairs = 50'000'000;
  /// Convention artifacts beyond this many are counted but not stored.
  std::size_t max_reported_artifacts = 50;
};

struct CounterexampleReport {
  JointTable distribution;
  RandomizedAlgorithm algorithm;
  CriterionFamily predictive_parity;
  CriterionFamily error_rate_balance;
  TheoremConditions conditions;
};

struct VerificationSummary {
  std::uint64_t distributions = 0;
  std::uint64_t algorithms_per_distribution = 0;
  std::uint64_t examined = 0;
  /// Pairs where predictive parity and error rate balance both hold.
  std::uint64_t satisfied_both = 0;
  /// Of those, how many have a perfect predictor / equal base rates.
  std::uint64_t perfect_predictor_count = 0;
  std::uint64_t equal_base_rates_count = 0;
  /// Group instances checked against the rate identities, and failures.
  std::uint64_t identity_checks = 0;
  std::uint64_t identity_failures = 0;
  /// Both criteria hold, neither condition holds, and no comparison relied
  /// on two UNDEFINED rates. Any entry here refutes the theorem.
  std::vector<CounterexampleReport> counterexamples;
  /// As above, but some comparison passed only as UNDEFINED == UNDEFINED.
  std::uint64_t convention_artifact_count = 0;
  std::vector<CounterexampleReport> convention_artifacts;
};

/// Distinct hire probabilities j/g, g <= denominator, ascending.
std::vector<Rational> probability_grid(unsigned denominator);

/// Every normalized joint table over groups x x_arity x {0,1} whose masses
/// share a common denominator <= mass_denominator, without duplicates.
std::vector<JointTable> enumerate_distributions(const EnumerationBounds& bounds);

/// Upper bound on the number of pairs enumerate_verify would examine.
double enumeration_cost(const EnumerationBounds& bounds);

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

/// Checks every (distribution, algorithm) pair on the grid. Work is split
/// across `threads` workers by distribution; the summary does not depend on
/// the worker count. `progress` is called every 10^4 distributions and once
/// at the end. Throws CostLimitError when the bounds are too large.
VerificationSummary enumerate_verify(const EnumerationBounds& bounds, unsigned threads = 1,
                                     const ProgressFn& progress = {});

/// Rate identities on one group instance: Bayes consistency, the
/// FPR/PPV/TPR identity where defined, and agreement between the
/// count-based and decomposition-based rates. Returns false on any failure.
bool check_rate_identities(const MassConfusion& masses, const DecomposedRates& decomposed);

}  // namespace paritylens
