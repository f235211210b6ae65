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

// Shared fixtures for the test binaries.

#include <fstream>
#include <sstream>
#include <string>

#include "paritylens/core.hpp"
#include "paritylens/rational.hpp"

namespace paritylens::testing {

inline std::string data_path(const std::string& name) { return std::string(PARITYLENS_DATA_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(PARITYLENS_GOLDEN_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Rational q(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

inline ColumnRoles table1_roles() { return {{"gender"}, {"score"}, "qualified", "hired", ""}; }

/// The hiring example: 20 records, hired iff gender M and score 1.
inline Dataset table1_dataset() { return ingest_csv(data_path("table1_hiring.csv"), table1_roles()); }

/// Builds a dataset from a compact list of (a, x, y, delta, count) rows.
struct Row {
  std::string a;
  std::string x;
  bool y;
  bool delta;
  std::uint64_t count = 1;
};

inline Dataset make_dataset(const std::vector<Row>& rows) {
  Schema schema;
  schema.sensitive.emplace_back("a");
  schema.permissible.emplace_back("x");
  std::vector<IndividualRecord> records;
  for (const auto& r : rows) {
    IndividualRecord rec;
    rec.sensitive = {schema.sensitive[0].intern(r.a)};
    rec.permissible = {schema.permissible[0].intern(r.x)};
    rec.outcome = r.y;
    rec.decision = r.delta;
    rec.multiplicity = r.count;
    records.push_back(rec);
  }
  return Dataset(std::move(schema), std::move(records));
}

}  // namespace paritylens::testing
