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

#include "paritylens/metrics.hpp"

#include <map>

#include "paritylens/errors.hpp"

namespace paritylens {

std::vector<GroupConfusion> confusion_by_group(const Dataset& data) {
  std::map<Profile, GroupConfusion> by_group;
  for (const auto& r : data.records()) {
    if (r.multiplicity == 0) continue;
    auto& c = by_group[r.sensitive];
    c.group = r.sensitive;
    if (r.outcome && r.decision) c.tp += r.multiplicity;
    if (!r.outcome && r.decision) c.fp += r.multiplicity;
    if (r.outcome && !r.decision) c.fn += r.multiplicity;
    if (!r.outcome && !r.decision) c.tn += r.multiplicity;
  }
  std::vector<GroupConfusion> out;
  out.reserve(by_group.size());
  for (auto& [g, c] : by_group) out.push_back(std::move(c));
  return out;
}

std::vector<MassConfusion> confusion_by_group(const JointTable& joint, const RandomizedAlgorithm& alg) {
  std::map<Profile, MassConfusion> by_group;
  for (const auto& [key, m] : joint.cells()) {
    if (m[0] + m[1] == 0) continue;
    auto p = alg.probability(key.sensitive, key.permissible);
    if (!p) throw DomainError("algorithm", "no hire probability for a cell with positive mass");
    auto& c = by_group[key.sensitive];
    c.group = key.sensitive;
    c.tp += m[1] * *p;
    c.fn += m[1] * (1 - *p);
    c.fp += m[0] * *p;
    c.tn += m[0] * (1 - *p);
  }
  std::vector<MassConfusion> out;
  out.reserve(by_group.size());
  for (auto& [g, c] : by_group) out.push_back(std::move(c));
  return out;
}

RateBundle rates(const GroupConfusion& c) {
  RateBundle r;
  r.tpr = count_ratio(c.tp, c.tp + c.fn);
  r.tnr = count_ratio(c.tn, c.fp + c.tn);
  r.ppv = count_ratio(c.tp, c.tp + c.fp);
  r.npv = count_ratio(c.tn, c.tn + c.fn);
  r.base_rate = count_ratio(c.tp + c.fn, c.total());
  r.hire_rate = count_ratio(c.tp + c.fp, c.total());
  return r;
}

RateBundle rates(const MassConfusion& c) {
  RateBundle r;
  r.tpr = safe_ratio(c.tp, c.tp + c.fn);
  r.tnr = safe_ratio(c.tn, c.fp + c.tn);
  r.ppv = safe_ratio(c.tp, c.tp + c.fp);
  r.npv = safe_ratio(c.tn, c.tn + c.fn);
  r.base_rate = safe_ratio(c.tp + c.fn, c.total());
  r.hire_rate = safe_ratio(c.tp + c.fp, c.total());
  return r;
}

Rate false_positive_rate(const RateBundle& r) {
  if (!r.tnr) return std::nullopt;
  return Rational(1 - *r.tnr);
}

bool bayes_consistent(const RateBundle& r) {
  if (!r.base_rate || !r.hire_rate) return false;
  const Rational& base = *r.base_rate;
  const Rational& hire = *r.hire_rate;
  // An UNDEFINED conditional rate sits next to a zero marginal; treat the
  // product as zero.
  auto product = [](const Rate& rate, const Rational& weight) {
    return rate ? Rational(*rate * weight) : Rational(0);
  };
  if ((!r.ppv && hire != 0) || (!r.tpr && base != 0)) return false;
  if ((!r.npv && hire != 1) || (!r.tnr && base != 1)) return false;
  return product(r.ppv, hire) == product(r.tpr, base) &&
         product(r.npv, Rational(1 - hire)) == product(r.tnr, Rational(1 - base));
}

std::optional<bool> chouldechova_holds(const RateBundle& r) {
  auto fpr = false_positive_rate(r);
  if (!fpr || !r.ppv || !r.tpr || !r.base_rate) return std::nullopt;
  const Rational& base = *r.base_rate;
  if (*r.ppv == 0 || base == 0 || base == 1) return std::nullopt;
  Rational rhs = base / (1 - base) * ((1 - *r.ppv) / *r.ppv) * *r.tpr;
  return *fpr == rhs;
}

}  // namespace paritylens
