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

#include <cstdint>
#include <optional>
#include <vector>

#include "paritylens/core.hpp"
#include "paritylens/rational.hpp"

namespace paritylens {

/// Confusion cells for one sensitive group. Count is an integer type for
/// observed data and Rational for probability masses.
template <typename Count>
struct BasicConfusion {
  Profile group;
  Count tp{};
  Count fp{};
  Count fn{};
  Count tn{};

  Count total() const { return tp + fp + fn + tn; }
};

using GroupConfusion = BasicConfusion<std::uint64_t>;
using MassConfusion = BasicConfusion<Rational>;

struct RateBundle {
  Rate tpr;
  Rate tnr;
  Rate ppv;
  Rate npv;
  Rate base_rate;
  Rate hire_rate;

  bool operator==(const RateBundle&) const = default;
};

/// One entry per observed sensitive profile, in id order.
std::vector<GroupConfusion> confusion_by_group(const Dataset& data);

/// Per-group masses of (y, delta) implied by a joint table and an algorithm.
/// Throws DomainError if the algorithm misses a cell with positive mass.
std::vector<MassConfusion> confusion_by_group(const JointTable& joint, const RandomizedAlgorithm& alg);

RateBundle rates(const GroupConfusion& c);
RateBundle rates(const MassConfusion& c);

/// FP / (FP + TN)
Rate false_positive_rate(const RateBundle& r);

/// PPV * hire_rate == TPR * base_rate and NPV * (1 - hire_rate) ==
/// TNR * (1 - base_rate). Sides with an UNDEFINED factor are skipped, since
/// the factor is then multiplied by a zero rate.
bool bayes_consistent(const RateBundle& r);

/// FPR == base/(1-base) * (1-PPV)/PPV * TPR. Empty when a term is undefined
/// or the identity's divisions are by zero (PPV = 0, base rate in {0, 1}).
std::optional<bool> chouldechova_holds(const RateBundle& r);

}  // namespace paritylens
