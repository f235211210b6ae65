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

#include "paritylens/impossibility.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "paritylens/errors.hpp"
#include "paritylens/metrics.hpp"

namespace paritylens {

TheoremConditions theorem_conditions(const JointTable& joint) {
  TheoremConditions tc;
  tc.perfect_predictor = true;
  for (const auto& [key, m] : joint.cells()) {
    auto post = joint.posterior(key.sensitive, key.permissible);
    if (!post) {
      tc.zero_mass_cells.push_back(key);
      continue;
    }
    if (*post != 0 && *post != 1) tc.perfect_predictor = false;
    tc.posteriors.emplace(key, *post);
  }
  tc.equal_base_rates = true;
  for (const auto& g : joint.groups()) {
    auto br = joint.base_rate(g);
    if (!br) continue;
    if (!tc.base_rates.empty() && tc.base_rates.begin()->second != *br) tc.equal_base_rates = false;
    tc.base_rates.emplace(g, *br);
  }
  return tc;
}

std::vector<DecomposedRates> decompose_rates(const JointTable& joint, const RandomizedAlgorithm& alg) {
  std::vector<DecomposedRates> out;
  for (const auto& g : joint.groups()) {
    const Rational group_mass = joint.group_mass(g);
    DecomposedRates d;
    d.group = g;
    for (const auto& [key, m] : joint.cells()) {
      if (key.sensitive != g || m[0] + m[1] == 0) continue;
      auto p = alg.probability(key.sensitive, key.permissible);
      if (!p) throw DomainError("algorithm", "no hire probability for a cell with positive mass");
      d.true_positive += m[1] * *p / group_mass;
      d.false_negative += m[1] * (1 - *p) / group_mass;
      d.false_positive += m[0] * *p / group_mass;
    }
    d.true_negative = 1 - (d.true_positive + d.false_positive + d.false_negative);
    // PPV = P[y=1 & d=1] / (TP + FP), TPR = P[y=1 & d=1] / (TP + FN), and the
    // negative-side duals.
    d.ppv = safe_ratio(d.true_positive, d.true_positive + d.false_positive);
    d.tpr = safe_ratio(d.true_positive, d.true_positive + d.false_negative);
    d.npv = safe_ratio(d.true_negative, d.true_negative + d.false_negative);
    d.tnr = safe_ratio(d.true_negative, d.true_negative + d.false_positive);
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

// Scales a mass confusion to integer counts by the lcm of its denominators.
GroupConfusion to_counts(const MassConfusion& m) {
  mpz_class scale = 1;
  for (const Rational* q : {&m.tp, &m.fp, &m.fn, &m.tn}) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q->get_den_mpz_t());
  }
  auto count = [&](const Rational& q) {
    Rational s = q * scale;
    if (!s.get_num().fits_ulong_p()) throw DomainError("masses", "too fine to express as counts");
    return static_cast<std::uint64_t>(s.get_num().get_ui());
  };
  GroupConfusion c;
  c.group = m.group;
  c.tp = count(m.tp);
  c.fp = count(m.fp);
  c.fn = count(m.fn);
  c.tn = count(m.tn);
  return c;
}

}  // namespace

bool check_rate_identities(const MassConfusion& masses, const DecomposedRates& decomposed) {
  const RateBundle from_counts = rates(to_counts(masses));
  if (!bayes_consistent(from_counts)) return false;
  if (auto ch = chouldechova_holds(from_counts); ch && !*ch) return false;
  if (!decomposed.fourth_from_three()) return false;
  return from_counts.ppv == decomposed.ppv && from_counts.tpr == decomposed.tpr &&
         from_counts.npv == decomposed.npv && from_counts.tnr == decomposed.tnr;
}

std::vector<Rational> probability_grid(unsigned denominator) {
  std::set<Rational> values;
  for (unsigned g = 1; g <= std::max(1u, denominator); ++g) {
    for (unsigned j = 0; j <= g; ++j) values.insert(Rational(make_rational(j, g)));
  }
  return {values.begin(), values.end()};
}

namespace {

struct CellLayout {
  std::vector<CellKey> cells;  // (a, x) pairs, a-major
};

CellLayout layout(const EnumerationBounds& b) {
  CellLayout l;
  for (TraitId a = 0; a < b.groups; ++a) {
    for (TraitId x = 0; x < b.x_arity; ++x) l.cells.push_back(CellKey{{a}, {x}});
  }
  return l;
}

void compositions(unsigned total, std::size_t parts, std::vector<unsigned>& cur,
                  const std::function<void(const std::vector<unsigned>&)>& emit) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (unsigned k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts, cur, emit);
    cur.pop_back();
  }
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<JointTable> enumerate_distributions(const EnumerationBounds& bounds) {
  const auto l = layout(bounds);
  const std::size_t parts = l.cells.size() * 2;
  std::vector<JointTable> out;
  if (parts == 0) return out;
  std::vector<unsigned> cur;
  for (unsigned d = 1; d <= bounds.mass_denominator; ++d) {
    compositions(d, parts, cur, [&](const std::vector<unsigned>& counts) {
      unsigned g = d;
      for (unsigned c : counts) g = std::gcd(g, c);
      if (g != 1) return;  // already produced at denominator d / g
      JointTable t;
      for (std::size_t i = 0; i < parts; ++i) {
        const auto& cell = l.cells[i / 2];
        t.add(cell.sensitive, cell.permissible, i % 2 == 1, make_rational(counts[i], d));
      }
      out.push_back(std::move(t));
    });
  }
  return out;
}

double enumeration_cost(const EnumerationBounds& bounds) {
  const unsigned cells = bounds.groups * bounds.x_arity;
  double dists = 0.0;
  for (unsigned d = 1; d <= bounds.mass_denominator; ++d) dists += binomial(d + 2 * cells - 1, 2 * cells - 1);
  const double algs = std::pow(static_cast<double>(probability_grid(bounds.prob_denominator).size()), cells);
  return dists * algs;
}

namespace {

struct DistributionResult {
  std::uint64_t examined = 0;
  std::uint64_t satisfied_both = 0;
  std::uint64_t perfect_predictor = 0;
  std::uint64_t equal_base_rates = 0;
  std::uint64_t identity_checks = 0;
  std::uint64_t identity_failures = 0;
  std::uint64_t artifact_count = 0;
  std::vector<CounterexampleReport> counterexamples;
  std::vector<CounterexampleReport> artifacts;
};

DistributionResult verify_distribution(const JointTable& joint, const CellLayout& l, const std::vector<Rational>& grid,
                                       std::size_t artifact_cap) {
  DistributionResult r;
  const TheoremConditions tc = theorem_conditions(joint);
  const std::size_t cells = l.cells.size();
  std::vector<std::size_t> idx(cells, 0);
  while (true) {
    RandomizedAlgorithm alg;
    for (std::size_t c = 0; c < cells; ++c) alg.set(l.cells[c].sensitive, l.cells[c].permissible, grid[idx[c]]);

    const auto masses = confusion_by_group(joint, alg);
    const auto decomposed = decompose_rates(joint, alg);
    std::vector<GroupRates> groups;
    for (std::size_t g = 0; g < masses.size(); ++g) {
      groups.push_back({masses[g].group, rates(masses[g])});
      ++r.identity_checks;
      if (!check_rate_identities(masses[g], decomposed[g])) ++r.identity_failures;
    }
    ++r.examined;
    auto pp = check_predictive_parity(groups);
    auto erb = check_error_rate_balance(groups);
    if (pp.combined.satisfied && erb.combined.satisfied) {
      ++r.satisfied_both;
      if (tc.perfect_predictor) ++r.perfect_predictor;
      if (tc.equal_base_rates) ++r.equal_base_rates;
      if (!tc.perfect_predictor && !tc.equal_base_rates) {
        const bool via_undefined = pp.combined.undefined_match || erb.combined.undefined_match;
        CounterexampleReport rep{joint, alg, pp, erb, tc};
        if (via_undefined) {
          ++r.artifact_count;
          if (r.artifacts.size() < artifact_cap) r.artifacts.push_back(std::move(rep));
        } else {
          r.counterexamples.push_back(std::move(rep));
        }
      }
    }
    // Odometer over grid indices.
    std::size_t c = 0;
    while (c < cells && ++idx[c] == grid.size()) idx[c++] = 0;
    if (c == cells) break;
  }
  return r;
}

}  // namespace

VerificationSummary enumerate_verify(const EnumerationBounds& bounds, unsigned threads, const ProgressFn& progress) {
  if (bounds.groups == 0 || bounds.x_arity == 0 || bounds.mass_denominator == 0 || bounds.prob_denominator == 0) {
    throw DomainError("bounds", "every enumeration bound must be at least 1");
  }
  const double cost = enumeration_cost(bounds);
  if (cost > static_cast<double>(bounds.max_pairs)) {
    throw CostLimitError("enumeration would examine about " + std::to_string(static_cast<unsigned long long>(cost)) +
                             " pairs, above the limit of " + std::to_string(bounds.max_pairs),
                         static_cast<unsigned long long>(cost));
  }
  const auto l = layout(bounds);
  const auto grid = probability_grid(bounds.prob_denominator);
  const auto dists = enumerate_distributions(bounds);

  std::vector<DistributionResult> results(dists.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < dists.size(); i = next++) {
      results[i] = verify_distribution(dists[i], l, grid, bounds.max_reported_artifacts);
      const auto finished = ++done;
      if (progress && finished % 10000 == 0) {
        std::lock_guard lock(progress_mutex);
        progress(finished, dists.size());
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(dists.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (progress) progress(dists.size(), dists.size());

  VerificationSummary s;
  s.distributions = dists.size();
  s.algorithms_per_distribution =
      static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(grid.size()), l.cells.size())));
  for (auto& r : results) {
    s.examined += r.examined;
    s.satisfied_both += r.satisfied_both;
    s.perfect_predictor_count += r.perfect_predictor;
    s.equal_base_rates_count += r.equal_base_rates;
    s.identity_checks += r.identity_checks;
    s.identity_failures += r.identity_failures;
    s.convention_artifact_count += r.artifact_count;
    for (auto& c : r.counterexamples) s.counterexamples.push_back(std::move(c));
    for (auto& a : r.artifacts) {
      if (s.convention_artifacts.size() < bounds.max_reported_artifacts) s.convention_artifacts.push_back(std::move(a));
    }
  }
  return s;
}

}  // namespace paritylens
