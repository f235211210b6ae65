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

// Report assembly and serialization. Rationals serialize as {num, den}
// (integers, or decimal strings when they exceed 64 bits); UNDEFINED rates
// serialize as null.

#include <string>
#include <vector>

#include "json.hpp"
#include "paritylens/core.hpp"
#include "paritylens/fairness.hpp"
#include "paritylens/feasibility.hpp"
#include "paritylens/impossibility.hpp"
#include "paritylens/metrics.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens {

inline constexpr const char* kToolVersion = "paritylens 1.0.0";

nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rate_to_json(const Rate& rate);
Rate rate_from_json(const nlohmann::json& j);

/// "0.800000 (4/5)" or "UNDEFINED".
std::string format_rate_cell(const Rate& rate);

/// Header line naming the comparison mode and tolerance.
std::string tolerance_header(Mode mode);

nlohmann::json verdict_to_json(const FairnessVerdict& v, const Schema& schema);
FairnessVerdict verdict_from_json(const nlohmann::json& j, const Schema& schema);
std::string format_verdict_line(const FairnessVerdict& v, const Schema& schema);

struct AuditReport {
  std::string tool_version = kToolVersion;
  Mode mode = Mode::kExact;
  std::uint64_t n = 0;
  Schema schema;
  std::vector<GroupConfusion> confusion;
  std::vector<RateBundle> rates;
  std::vector<FairnessVerdict> verdicts;
  TheoremConditions conditions;
};

AuditReport build_audit_report(const Dataset& data);
nlohmann::json audit_to_json(const AuditReport& report);
AuditReport audit_from_json(const nlohmann::json& j);
std::string format_audit_text(const AuditReport& report);

nlohmann::json conditions_to_json(const TheoremConditions& tc, const Schema& schema);
TheoremConditions conditions_from_json(const nlohmann::json& j, const Schema& schema);

nlohmann::json verification_to_json(const VerificationSummary& s);
std::string format_verification_text(const VerificationSummary& s, const EnumerationBounds& bounds);

nlohmann::json model_rates_to_json(const sd::ModelRates& rates);
std::string format_model_rates_text(const sd::ModelRates& rates);

nlohmann::json feasibility_to_json(const sd::FeasibilityResult& r);
std::string format_feasibility_text(const sd::FeasibilityResult& r);

}  // namespace paritylens
