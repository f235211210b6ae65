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

// Search over the (d_m, d_f) policy square for hiring rules meeting a
// fairness criterion in the three-score hiring model.
//
// Every single rate is a linear-fractional, strictly monotone function of
// the muddled-score hire probability, so each grid line meets a one-rate
// parity curve at most once. The search scans each grid line, brackets sign
// changes, and bisects; the same roots are also solved exactly in rationals
// on grid lines. Two-rate criteria are found by walking along the first
// rate's parity curve and bisecting sign changes of the second gap.

#include <optional>
#include <string>
#include <vector>

#include "paritylens/fairness.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens::sd {

struct FeasibilityOptions {
  /// Points per axis, including both ends; at least 2.
  unsigned grid = 101;
  double epsilon = kFloatTolerance;
  int bisection_iterations = 60;
};

struct FeasiblePoint {
  double d_m = 0.0;
  double d_f = 0.0;
  /// Set when the point was also obtained by exact rational solving.
  std::optional<Rational> exact_d_m;
  std::optional<Rational> exact_d_f;
  /// Largest |gap| of the criterion's rates at the point.
  double gap = 0.0;
  /// Both coordinates in {0, 1}.
  bool corner = false;
};

enum class FeasibleShape { kEmpty, kIsolated, kCurve };
std::string_view shape_name(FeasibleShape s);

/// A structural statement about the feasible set and whether the search
/// confirmed it.
struct Finding {
  std::string claim;
  bool holds = false;
  std::string detail;
};

struct FeasibilityResult {
  Criterion goal = Criterion::kErrorRateBalance;
  Variant variant = Variant::kPrevalence;
  FeasibleShape shape = FeasibleShape::kEmpty;
  /// Feasible points, sorted by (d_m, d_f).
  std::vector<FeasiblePoint> points;
  /// For two-rate criteria, the parity curve of the first rate.
  std::vector<FeasiblePoint> boundary;
  std::vector<Finding> findings;
  bool degenerate = false;

  std::vector<FeasiblePoint> non_corner_points() const;
  /// The feasible set is exactly {(0, 0)}.
  bool only_origin() const;
};

FeasibilityResult feasibility_search(const PhelpsianScenario& s, Criterion goal,
                                     const FeasibilityOptions& options = {});

}  // namespace paritylens::sd
