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

#include "paritylens/fairness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <string>

namespace paritylens {

std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kAntiClassification: return "ANTI_CLASSIFICATION";
    case Criterion::kPosPredParity: return "POS_PRED_PARITY";
    case Criterion::kNegPredParity: return "NEG_PRED_PARITY";
    case Criterion::kPredictiveParity: return "PREDICTIVE_PARITY";
    case Criterion::kPosErrorBalance: return "POS_ERROR_BALANCE";
    case Criterion::kNegErrorBalance: return "NEG_ERROR_BALANCE";
    case Criterion::kErrorRateBalance: return "ERROR_RATE_BALANCE";
    case Criterion::kDemographicParity: return "DEMOGRAPHIC_PARITY";
    case Criterion::kCondDemographicParity: return "COND_DEMOGRAPHIC_PARITY";
  }
  return "UNKNOWN";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
  std::string norm;
  for (char c : text) norm.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  static const std::map<std::string, Criterion> aliases = {
      {"AC", Criterion::kAntiClassification},  {"PPV", Criterion::kPosPredParity},
      {"NPV", Criterion::kNegPredParity},      {"PP", Criterion::kPredictiveParity},
      {"TPR", Criterion::kPosErrorBalance},    {"TNR", Criterion::kNegErrorBalance},
      {"ERB", Criterion::kErrorRateBalance},   {"DP", Criterion::kDemographicParity},
      {"CDP", Criterion::kCondDemographicParity},
  };
  if (auto it = aliases.find(norm); it != aliases.end()) return it->second;
  for (auto c : kAllCriteria) {
    if (criterion_name(c) == norm) return c;
  }
  return std::nullopt;
}

std::vector<GroupRates> group_rates(const Dataset& data) {
  std::vector<GroupRates> out;
  for (const auto& c : confusion_by_group(data)) out.push_back({c.group, rates(c)});
  return out;
}

std::vector<GroupRates> group_rates(const JointTable& joint, const RandomizedAlgorithm& alg) {
  std::vector<GroupRates> out;
  for (const auto& c : confusion_by_group(joint, alg)) out.push_back({c.group, rates(c)});
  return out;
}

namespace {

// Folds one pairwise comparison into a verdict under the UNDEFINED convention.
void fold_pair(FairnessVerdict& v, const Profile& ga, const Rate& a, const Profile& gb, const Rate& b,
               const std::optional<Profile>& x, std::optional<Witness>& worst_gap,
               std::optional<Witness>& first_mismatch) {
  if (!a && !b) {
    v.undefined_match = true;
    return;
  }
  if (!a || !b) {
    if (!first_mismatch) first_mismatch = Witness{ga, gb, x, a, b, WitnessKind::kUndefinedMismatch};
    return;
  }
  Rational d = abs_diff(*a, *b);
  if (d > v.gap) {
    v.gap = d;
    worst_gap = Witness{ga, gb, x, a, b, WitnessKind::kValueGap};
  }
}

void finish(FairnessVerdict& v, std::optional<Witness>& worst_gap, std::optional<Witness>& first_mismatch) {
  if (v.gap > 0) {
    v.satisfied = false;
    v.witness = std::move(worst_gap);
  } else if (first_mismatch) {
    v.satisfied = false;
    v.witness = std::move(first_mismatch);
  }
}

FairnessVerdict conjunction(Criterion c, const FairnessVerdict& pos, const FairnessVerdict& neg) {
  FairnessVerdict v;
  v.criterion = c;
  v.mode = pos.mode;
  v.satisfied = pos.satisfied && neg.satisfied;
  v.gap = std::max(pos.gap, neg.gap);
  v.undefined_match = pos.undefined_match || neg.undefined_match;
  v.empirical = pos.empirical || neg.empirical;
  if (!pos.satisfied) {
    v.witness = pos.witness;
  } else if (!neg.satisfied) {
    v.witness = neg.witness;
  }
  return v;
}

}  // namespace

FairnessVerdict compare_across_groups(Criterion criterion, std::span<const GroupRates> groups,
                                      Rate RateBundle::*member) {
  FairnessVerdict v;
  v.criterion = criterion;
  std::optional<Witness> worst_gap, first_mismatch;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      fold_pair(v, groups[i].group, groups[i].rates.*member, groups[j].group, groups[j].rates.*member,
                std::nullopt, worst_gap, first_mismatch);
    }
  }
  finish(v, worst_gap, first_mismatch);
  return v;
}

CriterionFamily check_predictive_parity(std::span<const GroupRates> groups) {
  CriterionFamily f;
  f.positive = compare_across_groups(Criterion::kPosPredParity, groups, &RateBundle::ppv);
  f.negative = compare_across_groups(Criterion::kNegPredParity, groups, &RateBundle::npv);
  f.combined = conjunction(Criterion::kPredictiveParity, f.positive, f.negative);
  return f;
}

CriterionFamily check_error_rate_balance(std::span<const GroupRates> groups) {
  CriterionFamily f;
  f.positive = compare_across_groups(Criterion::kPosErrorBalance, groups, &RateBundle::tpr);
  f.negative = compare_across_groups(Criterion::kNegErrorBalance, groups, &RateBundle::tnr);
  f.combined = conjunction(Criterion::kErrorRateBalance, f.positive, f.negative);
  return f;
}

FairnessVerdict check_demographic_parity(std::span<const GroupRates> groups) {
  return compare_across_groups(Criterion::kDemographicParity, groups, &RateBundle::hire_rate);
}

FairnessVerdict check_anti_classification(const RandomizedAlgorithm& alg) {
  // Within each permissible profile the hire probabilities must all agree;
  // the spread is max - min.
  struct Extremes {
    const CellKey* lo = nullptr;
    const CellKey* hi = nullptr;
    const Rational* lo_p = nullptr;
    const Rational* hi_p = nullptr;
  };
  std::map<Profile, Extremes> by_x;
  for (const auto& [key, p] : alg.table()) {
    auto& e = by_x[key.permissible];
    if (!e.lo || p < *e.lo_p) {
      e.lo = &key;
      e.lo_p = &p;
    }
    if (!e.hi || p > *e.hi_p) {
      e.hi = &key;
      e.hi_p = &p;
    }
  }
  FairnessVerdict v;
  v.criterion = Criterion::kAntiClassification;
  for (const auto& [x, e] : by_x) {
    Rational spread = *e.hi_p - *e.lo_p;
    if (spread > v.gap) {
      v.gap = spread;
      v.witness = Witness{e.hi->sensitive, e.lo->sensitive, x, *e.hi_p, *e.lo_p, WitnessKind::kValueGap};
    }
  }
  v.satisfied = v.gap == 0;
  return v;
}

FairnessVerdict check_conditional_demographic_parity(const RandomizedAlgorithm& alg) {
  // Pairwise form: x_i == x_j implies Pr[delta | a_i, x_i] == Pr[delta | a_j, x_j].
  std::vector<std::pair<const CellKey*, const Rational*>> cells;
  for (const auto& [key, p] : alg.table()) cells.emplace_back(&key, &p);
  FairnessVerdict v;
  v.criterion = Criterion::kCondDemographicParity;
  std::optional<Witness> worst_gap, first_mismatch;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      const auto& [ki, pi] = cells[i];
      const auto& [kj, pj] = cells[j];
      if (ki->permissible != kj->permissible) continue;
      fold_pair(v, ki->sensitive, *pi, kj->sensitive, *pj, ki->permissible, worst_gap, first_mismatch);
    }
  }
  finish(v, worst_gap, first_mismatch);
  return v;
}

FairnessVerdict check_anti_classification(const Dataset& data) {
  auto v = check_anti_classification(empirical_algorithm(data));
  v.empirical = true;
  return v;
}

FairnessVerdict check_conditional_demographic_parity(const Dataset& data) {
  auto v = check_conditional_demographic_parity(empirical_algorithm(data));
  v.empirical = true;
  return v;
}

namespace {

std::vector<FairnessVerdict> assemble(FairnessVerdict ac, std::span<const GroupRates> groups, FairnessVerdict cdp) {
  auto pp = check_predictive_parity(groups);
  auto erb = check_error_rate_balance(groups);
  return {std::move(ac),
          std::move(pp.positive),
          std::move(pp.negative),
          std::move(pp.combined),
          std::move(erb.positive),
          std::move(erb.negative),
          std::move(erb.combined),
          check_demographic_parity(groups),
          std::move(cdp)};
}

}  // namespace

std::vector<FairnessVerdict> check_all(const Dataset& data) {
  auto groups = group_rates(data);
  auto alg = empirical_algorithm(data);
  auto ac = check_anti_classification(alg);
  auto cdp = check_conditional_demographic_parity(alg);
  ac.empirical = cdp.empirical = true;
  return assemble(std::move(ac), groups, std::move(cdp));
}

std::vector<FairnessVerdict> check_all(const JointTable& joint, const RandomizedAlgorithm& alg) {
  auto groups = group_rates(joint, alg);
  return assemble(check_anti_classification(alg), groups, check_conditional_demographic_parity(alg));
}

FairnessVerdict compare_across_groups_float(Criterion criterion, std::span<const FloatGroupRate> groups,
                                            double epsilon) {
  FairnessVerdict v;
  v.criterion = criterion;
  v.mode = Mode::kFloat;
  double worst = 0.0;
  std::optional<Witness> worst_gap, first_mismatch;
  auto as_rate = [](const std::optional<double>& d) -> Rate {
    if (!d) return std::nullopt;
    return rational_from_double(*d);
  };
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const auto& a = groups[i];
      const auto& b = groups[j];
      if (!a.value && !b.value) {
        v.undefined_match = true;
      } else if (!a.value || !b.value) {
        if (!first_mismatch) {
          first_mismatch = Witness{a.group, b.group, std::nullopt, as_rate(a.value), as_rate(b.value),
                                   WitnessKind::kUndefinedMismatch};
        }
      } else if (double d = std::fabs(*a.value - *b.value); d > worst) {
        worst = d;
        worst_gap = Witness{a.group, b.group, std::nullopt, as_rate(a.value), as_rate(b.value),
                            WitnessKind::kValueGap};
      }
    }
  }
  v.gap = rational_from_double(worst);
  if (worst > epsilon) {
    v.satisfied = false;
    v.witness = std::move(worst_gap);
  } else if (first_mismatch) {
    v.satisfied = false;
    v.witness = std::move(first_mismatch);
  }
  return v;
}

}  // namespace paritylens
