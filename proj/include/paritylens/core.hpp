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

// Decision datasets: trait vocabularies, records, ingestion, and the exact
// joint distribution over (sensitive profile, permissible profile, outcome).

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "paritylens/rational.hpp"

namespace paritylens {

using TraitId = std::uint32_t;

/// Dense ids, one per trait dimension, e.g. {gender=0} or {score=2, region=1}.
using Profile = std::vector<TraitId>;

/// One categorical trait column. Ids are dense 0..k-1 in first-appearance
/// order and the label<->id mapping is a bijection.
class TraitDimension {
 public:
  explicit TraitDimension(std::string name);
  TraitDimension(std::string name, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Returns the id of `label`, adding it to the vocabulary if new.
  TraitId intern(std::string_view label);
  std::optional<TraitId> find(std::string_view label) const;
  const std::string& label(TraitId id) const;

  bool operator==(const TraitDimension& other) const {
    return name_ == other.name_ && labels_ == other.labels_;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::map<std::string, TraitId, std::less<>> index_;
};

struct Schema {
  std::vector<TraitDimension> sensitive;
  std::vector<TraitDimension> permissible;
  std::string outcome = "y";
  std::string decision = "delta";

  /// "M", or "M|black" for multi-column profiles.
  std::string sensitive_label(const Profile& profile) const;
  /// As above; "*" when there are no permissible columns.
  std::string permissible_label(const Profile& profile) const;

  bool operator==(const Schema&) const = default;
};

struct IndividualRecord {
  Profile sensitive;
  Profile permissible;
  bool outcome = false;
  bool decision = false;
  /// Number of identical individuals this row stands for.
  std::uint64_t multiplicity = 1;

  bool operator==(const IndividualRecord&) const = default;
};

/// Immutable validated dataset. n() counts individuals (multiplicities
/// summed), so it is at least 1 for every constructed Dataset.
class Dataset {
 public:
  Dataset(Schema schema, std::vector<IndividualRecord> records);

  const Schema& schema() const { return schema_; }
  std::span<const IndividualRecord> records() const { return records_; }
  std::uint64_t n() const { return n_; }

  /// Observed sensitive profiles, in id order.
  std::vector<Profile> groups() const;

 private:
  Schema schema_;
  std::vector<IndividualRecord> records_;
  std::uint64_t n_ = 0;
};

/// Which CSV columns play which role. `weight`, when set, names an integer
/// multiplicity column.
struct ColumnRoles {
  std::vector<std::string> sensitive;
  std::vector<std::string> permissible;
  std::string outcome;
  std::string decision;
  std::string weight;
};

Dataset parse_csv(std::istream& in, const ColumnRoles& roles);
Dataset ingest_csv(const std::filesystem::path& path, const ColumnRoles& roles);

/// {"schema": {...}, "records": [...]}; see README for the layout.
Dataset parse_json_dataset(const nlohmann::json& doc);
Dataset ingest_json(const std::filesystem::path& path);
nlohmann::json dataset_to_json(const Dataset& data);

/// Dispatches on extension: ".json" uses the JSON layout (roles ignored),
/// anything else is read as CSV.
Dataset load_dataset(const std::filesystem::path& path, const ColumnRoles& roles);

/// Header plus one line per individual (multiplicities expanded).
void write_csv(std::ostream& out, const Dataset& data);

struct CellKey {
  Profile sensitive;
  Profile permissible;

  auto operator<=>(const CellKey&) const = default;
};

/// Exact probability masses over (a, x, y). Masses need not be normalized
/// until normalized() is called; conditionals are scale invariant anyway.
class JointTable {
 public:
  /// Accumulates `mass` onto cell (a, x, y). Throws DomainError if negative.
  void add(const Profile& a, const Profile& x, bool y, const Rational& mass);

  /// cell -> {mass at y=0, mass at y=1}
  const std::map<CellKey, std::array<Rational, 2>>& cells() const { return cells_; }

  Rational total() const;
  Rational mass(const Profile& a, const Profile& x, bool y) const;
  Rational cell_mass(const Profile& a, const Profile& x) const;
  /// P[y=1 | a, x]; UNDEFINED for a zero-mass cell.
  Rate posterior(const Profile& a, const Profile& x) const;

  /// Sensitive profiles carrying positive mass, in id order.
  std::vector<Profile> groups() const;
  Rational group_mass(const Profile& a) const;
  /// P[y=1 | a]
  Rate base_rate(const Profile& a) const;

  /// Same table scaled to total mass 1. Throws DomainError on an empty table.
  JointTable normalized() const;

  bool operator==(const JointTable&) const = default;

 private:
  std::map<CellKey, std::array<Rational, 2>> cells_;
};

/// Empirical distribution: each record contributes multiplicity / n.
JointTable joint_distribution(const Dataset& data);

/// Hire probability per (a, x) cell.
class RandomizedAlgorithm {
 public:
  /// Throws DomainError unless 0 <= p <= 1.
  void set(const Profile& a, const Profile& x, const Rational& p);

  std::optional<Rational> probability(const Profile& a, const Profile& x) const;
  const std::map<CellKey, Rational>& table() const { return table_; }

  /// Cells with positive mass in `joint` that have no entry here.
  std::vector<CellKey> missing_cells(const JointTable& joint) const;
  bool covers(const JointTable& joint) const { return missing_cells(joint).empty(); }

 private:
  std::map<CellKey, Rational> table_;
};

/// P-hat[delta=1 | a, x] from observed decisions, one entry per observed cell.
RandomizedAlgorithm empirical_algorithm(const Dataset& data);

}  // namespace paritylens
