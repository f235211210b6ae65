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

// Scenario files: JSON objects or "key = value" lines with '#' comments.
//
//   variant = prevalence        # or precision
//   p_m = 0.4
//   p_f = 3/5
//   phi = 1/2
//   B = 1
//   omega = -2
//   d_m = 1/4                    # optional policy
//   d_f = 1/2
//   gender_split = 1/2           # optional P[a = m]
//
// Numbers may be decimals or fractions and are read exactly.

#include <filesystem>
#include <optional>
#include <string_view>

#include "json.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens::sd {

struct ScenarioFile {
  PhelpsianScenario scenario;
  std::optional<HiringPolicy> policy;
};

/// Throws DomainError naming the offending or missing field.
ScenarioFile parse_scenario(std::string_view text);
ScenarioFile load_scenario(const std::filesystem::path& path);
nlohmann::json scenario_to_json(const ScenarioFile& file);

}  // namespace paritylens::sd
