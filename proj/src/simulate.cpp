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

#include <algorithm>
#include <array>
#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "paritylens/errors.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens::sd {

namespace {

constexpr std::size_t kBins = 2 * 3 * 2 * 2;  // gender, score, y, delta

std::size_t bin_index(int gender, int score, bool y, bool hired) {
  return static_cast<std::size_t>(((gender * 3 + (score - 1)) * 2 + (y ? 1 : 0)) * 2 + (hired ? 1 : 0));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1), independent of the standard library's
// distribution implementations.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct DrawProbabilities {
  double male_share;
  std::array<double, 2> prevalence;
  std::array<double, 2> precision;
  std::array<double, 2> muddled;
};

std::array<std::uint64_t, kBins> run_chunk(const DrawProbabilities& pr, std::uint64_t count, std::uint64_t seed) {
  std::array<std::uint64_t, kBins> bins{};
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const int g = uniform(rng) < pr.male_share ? 0 : 1;
    const bool y = uniform(rng) < pr.prevalence[g];
    const bool informative = uniform(rng) < pr.precision[g];
    const int score = informative ? (y ? 3 : 1) : 2;
    bool hired = score == 3;
    if (score == 2) hired = uniform(rng) < pr.muddled[g];
    ++bins[bin_index(g, score, y, hired)];
  }
  return bins;
}

}  // namespace

Dataset simulate(const PhelpsianScenario& s, const HiringPolicy& policy, const SimulationOptions& options) {
  if (options.n == 0) throw DomainError("n", "sample count must be at least 1");
  if (options.chunk_size == 0) throw DomainError("chunk_size", "must be at least 1");
  s.validate();
  policy.validate();

  DrawProbabilities pr{};
  pr.male_share = to_double(s.male_share);
  for (auto g : kGenders) {
    const auto i = static_cast<std::size_t>(g);
    pr.prevalence[i] = to_double(s.prevalence_of(g));
    pr.precision[i] = to_double(s.precision_of(g));
    pr.muddled[i] = to_double(policy.muddled(g));
  }

  const std::uint64_t chunks = (options.n + options.chunk_size - 1) / options.chunk_size;
  std::vector<std::array<std::uint64_t, kBins>> results(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = c * options.chunk_size;
      const std::uint64_t count = std::min(options.chunk_size, options.n - begin);
      results[c] = run_chunk(pr, count, splitmix64(options.seed ^ splitmix64(c)));
    }
  };
  const auto workers = static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, chunks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  std::vector<IndividualRecord> records;
  for (const auto& bins : results) {
    for (int g = 0; g < 2; ++g) {
      for (int score = 1; score <= 3; ++score) {
        for (bool y : {false, true}) {
          for (bool hired : {false, true}) {
            const auto count = bins[bin_index(g, score, y, hired)];
            if (count == 0) continue;
            records.push_back(IndividualRecord{gender_profile(static_cast<Gender>(g)), score_profile(score), y, hired,
                                               count});
          }
        }
      }
    }
  }
  return Dataset(model_schema(), std::move(records));
}

}  // namespace paritylens::sd
