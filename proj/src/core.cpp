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

#include "paritylens/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "paritylens/errors.hpp"

namespace paritylens {

TraitDimension::TraitDimension(std::string name) : name_(std::move(name)) {}

TraitDimension::TraitDimension(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)) {
  for (auto& label : labels) {
    if (find(label)) throw SchemaError("duplicate value '" + label + "' in trait '" + name_ + "'");
    intern(label);
  }
}

TraitId TraitDimension::intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  auto id = static_cast<TraitId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(std::string(label), id);
  return id;
}

std::optional<TraitId> TraitDimension::find(std::string_view label) const {
  if (auto it = index_.find(label); it != index_.end()) return it->second;
  return std::nullopt;
}

const std::string& TraitDimension::label(TraitId id) const {
  if (id >= labels_.size()) throw SchemaError("trait '" + name_ + "' has no id " + std::to_string(id));
  return labels_[id];
}

namespace {

std::string join_labels(const std::vector<TraitDimension>& dims, const Profile& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.size() && i < dims.size(); ++i) {
    if (i) out.push_back('|');
    out += dims[i].label(profile[i]);
  }
  return out;
}

}  // namespace

std::string Schema::sensitive_label(const Profile& profile) const {
  return join_labels(sensitive, profile);
}

std::string Schema::permissible_label(const Profile& profile) const {
  if (permissible.empty()) return "*";
  return join_labels(permissible, profile);
}

Dataset::Dataset(Schema schema, std::vector<IndividualRecord> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  if (schema_.sensitive.empty()) throw SchemaError("at least one sensitive column is required");
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    auto check = [&](const std::vector<TraitDimension>& dims, const Profile& p, const char* what) {
      if (p.size() != dims.size()) {
        throw SchemaError(std::string(what) + " profile arity mismatch at record " + std::to_string(i + 1));
      }
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] >= dims[k].size()) {
          throw SchemaError(std::string(what) + " id out of range at record " + std::to_string(i + 1));
        }
      }
    };
    check(schema_.sensitive, r.sensitive, "sensitive");
    check(schema_.permissible, r.permissible, "permissible");
    n_ += r.multiplicity;
  }
  if (n_ == 0) throw EmptyInputError("dataset has no records");
}

std::vector<Profile> Dataset::groups() const {
  std::set<Profile> seen;
  for (const auto& r : records_) {
    if (r.multiplicity > 0) seen.insert(r.sensitive);
  }
  return {seen.begin(), seen.end()};
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool parse_binary(const std::string& token, const std::string& column, std::size_t row) {
  if (token == "0") return false;
  if (token == "1") return true;
  throw ValueError("column '" + column + "' must be 0 or 1, got '" + token + "'", row);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Dataset parse_csv(std::istream& in, const ColumnRoles& roles) {
  if (roles.outcome.empty()) throw SchemaError("an outcome column is required");
  if (roles.decision.empty()) throw SchemaError("a decision column is required");
  if (roles.sensitive.empty()) throw SchemaError("at least one sensitive column is required");

  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw EmptyInputError("input is empty");

  auto column_index = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError("missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  Schema schema;
  schema.outcome = roles.outcome;
  schema.decision = roles.decision;
  std::vector<std::size_t> sens_idx, perm_idx;
  for (const auto& name : roles.sensitive) {
    sens_idx.push_back(column_index(name));
    schema.sensitive.emplace_back(name);
  }
  for (const auto& name : roles.permissible) {
    perm_idx.push_back(column_index(name));
    schema.permissible.emplace_back(name);
  }
  const std::size_t outcome_idx = column_index(roles.outcome);
  const std::size_t decision_idx = column_index(roles.decision);
  std::optional<std::size_t> weight_idx;
  if (!roles.weight.empty()) weight_idx = column_index(roles.weight);

  std::vector<IndividualRecord> records;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ValueError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       row);
    }
    IndividualRecord rec;
    for (std::size_t k = 0; k < sens_idx.size(); ++k) {
      rec.sensitive.push_back(schema.sensitive[k].intern(fields[sens_idx[k]]));
    }
    for (std::size_t k = 0; k < perm_idx.size(); ++k) {
      rec.permissible.push_back(schema.permissible[k].intern(fields[perm_idx[k]]));
    }
    rec.outcome = parse_binary(fields[outcome_idx], roles.outcome, row);
    rec.decision = parse_binary(fields[decision_idx], roles.decision, row);
    if (weight_idx) {
      const auto& w = fields[*weight_idx];
      std::uint64_t m = 0;
      try {
        std::size_t used = 0;
        m = std::stoull(w, &used);
        if (used != w.size() || w.front() == '-') throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw ValueError("weight must be a nonnegative integer, got '" + w + "'", row);
      }
      rec.multiplicity = m;
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw EmptyInputError("input has a header but no records");
  return Dataset(std::move(schema), std::move(records));
}

Dataset ingest_csv(const std::filesystem::path& path, const ColumnRoles& roles) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  try {
    return parse_csv(in, roles);
  } catch (const ValueError& e) {
    throw ValueError(path.string() + ": " + e.what(), std::nullopt);
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const EmptyInputError& e) {
    throw EmptyInputError(path.string() + ": " + e.what());
  }
}

namespace {

std::string json_token(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::vector<TraitDimension> json_dimensions(const nlohmann::json& dims) {
  std::vector<TraitDimension> out;
  if (!dims.is_array()) throw SchemaError("schema trait lists must be arrays");
  for (const auto& d : dims) {
    if (d.is_string()) {
      out.emplace_back(d.get<std::string>());
    } else if (d.is_object() && d.contains("name")) {
      std::vector<std::string> labels;
      if (d.contains("values")) {
        for (const auto& v : d.at("values")) labels.push_back(json_token(v));
      }
      out.emplace_back(d.at("name").get<std::string>(), std::move(labels));
    } else {
      throw SchemaError("trait dimension must be a name or {name, values}");
    }
  }
  return out;
}

}  // namespace

Dataset parse_json_dataset(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("schema") || !doc.contains("records")) {
    throw SchemaError("JSON dataset needs \"schema\" and \"records\"");
  }
  const auto& js = doc.at("schema");
  Schema schema;
  schema.sensitive = json_dimensions(js.value("sensitive", nlohmann::json::array()));
  schema.permissible = json_dimensions(js.value("permissible", nlohmann::json::array()));
  schema.outcome = js.value("outcome", std::string("y"));
  schema.decision = js.value("decision", std::string("delta"));

  const auto& jr = doc.at("records");
  if (!jr.is_array()) throw SchemaError("\"records\" must be an array");
  if (jr.empty()) throw EmptyInputError("dataset has no records");
  std::vector<IndividualRecord> records;
  std::size_t row = 0;
  for (const auto& r : jr) {
    ++row;
    IndividualRecord rec;
    auto profile = [&](const char* key, std::vector<TraitDimension>& dims) {
      Profile p;
      const auto& vals = r.at(key);
      if (vals.size() != dims.size()) throw ValueError(std::string(key) + " arity mismatch", row);
      for (std::size_t k = 0; k < dims.size(); ++k) p.push_back(dims[k].intern(json_token(vals[k])));
      return p;
    };
    auto binary = [&](const char* key) {
      auto tok = json_token(r.at(key));
      return parse_binary(tok, key, row);
    };
    try {
      rec.sensitive = profile("sensitive", schema.sensitive);
      rec.permissible = r.contains("permissible") ? profile("permissible", schema.permissible) : Profile{};
      rec.outcome = binary("outcome");
      rec.decision = binary("decision");
      if (r.contains("count")) {
        const auto& c = r.at("count");
        if (!c.is_number_unsigned()) throw ValueError("count must be a nonnegative integer", row);
        rec.multiplicity = c.get<std::uint64_t>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValueError(std::string("malformed record: ") + e.what(), row);
    }
    records.push_back(std::move(rec));
  }
  return Dataset(std::move(schema), std::move(records));
}

Dataset ingest_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_json_dataset(doc);
}

nlohmann::json dataset_to_json(const Dataset& data) {
  auto dims = [](const std::vector<TraitDimension>& ds) {
    auto arr = nlohmann::json::array();
    for (const auto& d : ds) arr.push_back({{"name", d.name()}, {"values", d.labels()}});
    return arr;
  };
  const auto& s = data.schema();
  nlohmann::json doc;
  doc["schema"] = {{"sensitive", dims(s.sensitive)},
                   {"permissible", dims(s.permissible)},
                   {"outcome", s.outcome},
                   {"decision", s.decision}};
  auto records = nlohmann::json::array();
  for (const auto& r : data.records()) {
    nlohmann::json jr;
    auto labels = [](const std::vector<TraitDimension>& ds, const Profile& p) {
      auto arr = nlohmann::json::array();
      for (std::size_t k = 0; k < p.size(); ++k) arr.push_back(ds[k].label(p[k]));
      return arr;
    };
    jr["sensitive"] = labels(s.sensitive, r.sensitive);
    jr["permissible"] = labels(s.permissible, r.permissible);
    jr["outcome"] = r.outcome ? 1 : 0;
    jr["decision"] = r.decision ? 1 : 0;
    if (r.multiplicity != 1) jr["count"] = r.multiplicity;
    records.push_back(std::move(jr));
  }
  doc["records"] = std::move(records);
  return doc;
}

Dataset load_dataset(const std::filesystem::path& path, const ColumnRoles& roles) {
  if (path.extension() == ".json") return ingest_json(path);
  return ingest_csv(path, roles);
}

void write_csv(std::ostream& out, const Dataset& data) {
  const auto& s = data.schema();
  bool first = true;
  auto field = [&](const std::string& v) {
    if (!first) out << ',';
    out << csv_escape(v);
    first = false;
  };
  for (const auto& d : s.sensitive) field(d.name());
  for (const auto& d : s.permissible) field(d.name());
  field(s.outcome);
  field(s.decision);
  out << '\n';
  for (const auto& r : data.records()) {
    for (std::uint64_t m = 0; m < r.multiplicity; ++m) {
      first = true;
      for (std::size_t k = 0; k < r.sensitive.size(); ++k) field(s.sensitive[k].label(r.sensitive[k]));
      for (std::size_t k = 0; k < r.permissible.size(); ++k) field(s.permissible[k].label(r.permissible[k]));
      field(r.outcome ? "1" : "0");
      field(r.decision ? "1" : "0");
      out << '\n';
    }
  }
}

void JointTable::add(const Profile& a, const Profile& x, bool y, const Rational& mass) {
  if (mass < 0) throw DomainError("mass", "must be nonnegative");
  auto& cell = cells_[CellKey{a, x}];
  cell[y ? 1 : 0] += mass;
}

Rational JointTable::total() const {
  Rational t = 0;
  for (const auto& [key, m] : cells_) t += m[0] + m[1];
  return t;
}

Rational JointTable::mass(const Profile& a, const Profile& x, bool y) const {
  auto it = cells_.find(CellKey{a, x});
  return it == cells_.end() ? Rational(0) : it->second[y ? 1 : 0];
}

Rational JointTable::cell_mass(const Profile& a, const Profile& x) const {
  auto it = cells_.find(CellKey{a, x});
  return it == cells_.end() ? Rational(0) : Rational(it->second[0] + it->second[1]);
}

Rate JointTable::posterior(const Profile& a, const Profile& x) const {
  return safe_ratio(mass(a, x, true), cell_mass(a, x));
}

std::vector<Profile> JointTable::groups() const {
  std::vector<Profile> out;
  for (const auto& [key, m] : cells_) {
    if (m[0] + m[1] > 0 && (out.empty() || out.back() != key.sensitive)) out.push_back(key.sensitive);
  }
  return out;
}

Rational JointTable::group_mass(const Profile& a) const {
  Rational t = 0;
  for (const auto& [key, m] : cells_) {
    if (key.sensitive == a) t += m[0] + m[1];
  }
  return t;
}

Rate JointTable::base_rate(const Profile& a) const {
  Rational pos = 0;
  Rational all = 0;
  for (const auto& [key, m] : cells_) {
    if (key.sensitive != a) continue;
    pos += m[1];
    all += m[0] + m[1];
  }
  return safe_ratio(pos, all);
}

JointTable JointTable::normalized() const {
  Rational t = total();
  if (t == 0) throw DomainError("joint", "table has zero total mass");
  JointTable out;
  for (const auto& [key, m] : cells_) {
    out.cells_[key] = {Rational(m[0] / t), Rational(m[1] / t)};
  }
  return out;
}

JointTable joint_distribution(const Dataset& data) {
  JointTable joint;
  const Rational n = from_count(data.n());
  for (const auto& r : data.records()) {
    if (r.multiplicity == 0) continue;
    joint.add(r.sensitive, r.permissible, r.outcome,
              Rational(from_count(r.multiplicity) / n));
  }
  return joint;
}

void RandomizedAlgorithm::set(const Profile& a, const Profile& x, const Rational& p) {
  if (p < 0 || p > 1) throw DomainError("probability", "hire probability must lie in [0,1]");
  table_[CellKey{a, x}] = p;
}

std::optional<Rational> RandomizedAlgorithm::probability(const Profile& a, const Profile& x) const {
  auto it = table_.find(CellKey{a, x});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::vector<CellKey> RandomizedAlgorithm::missing_cells(const JointTable& joint) const {
  std::vector<CellKey> out;
  for (const auto& [key, m] : joint.cells()) {
    if (m[0] + m[1] > 0 && !table_.contains(key)) out.push_back(key);
  }
  return out;
}

RandomizedAlgorithm empirical_algorithm(const Dataset& data) {
  std::map<CellKey, std::pair<std::uint64_t, std::uint64_t>> counts;  // hired, total
  for (const auto& r : data.records()) {
    if (r.multiplicity == 0) continue;
    auto& c = counts[CellKey{r.sensitive, r.permissible}];
    if (r.decision) c.first += r.multiplicity;
    c.second += r.multiplicity;
  }
  RandomizedAlgorithm alg;
  for (const auto& [key, c] : counts) {
    alg.set(key.sensitive, key.permissible, *count_ratio(c.first, c.second));
  }
  return alg;
}

}  // namespace paritylens
