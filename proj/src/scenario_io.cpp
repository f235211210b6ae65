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

#include "paritylens/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "paritylens/errors.hpp"

namespace paritylens::sd {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

using Fields = std::map<std::string, std::string>;

Fields fields_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("scenario", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("scenario", "JSON scenario must be an object");
  Fields f;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      f[key] = value.get<std::string>();
    } else if (value.is_number_integer()) {
      f[key] = value.dump();
    } else if (value.is_number()) {
      f[key] = to_fraction_string(rational_from_double(value.get<double>()));
    } else if (!value.is_null()) {
      throw DomainError(key, "must be a number or string");
    }
  }
  return f;
}

Fields fields_from_text(std::string_view text) {
  Fields f;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw DomainError("scenario", "line " + std::to_string(lineno) + " is not 'key = value'");
    }
    f[trim(line.substr(0, sep))] = trim(line.substr(sep + 1));
  }
  return f;
}

Variant parse_variant(const std::string& v) {
  const auto s = lower(v);
  if (s == "prevalence" || s == "gender-blind" || s == "gender_blind") return Variant::kPrevalence;
  if (s == "precision" || s == "gender-sensitive" || s == "gender_sensitive") return Variant::kPrecision;
  throw DomainError("variant", "expected 'prevalence' or 'precision', got '" + v + "'");
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
  const std::string body = trim(text);
  Fields f = !body.empty() && body.front() == '{' ? fields_from_json(body) : fields_from_text(body);

  static const std::vector<std::string> known = {"variant", "p_m", "p_f", "p_tilde", "phi", "phi_m",
                                                 "phi_f",   "B",   "omega", "d_m",   "d_f", "gender_split"};
  for (const auto& [key, value] : f) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw DomainError(key, "unknown scenario field");
  }
  auto number = [&](const std::string& key) -> Rational {
    auto it = f.find(key);
    if (it == f.end()) throw DomainError(key, "missing required field");
    try {
      return parse_rational(it->second);
    } catch (const DomainError&) {
      throw DomainError(key, "cannot parse '" + it->second + "' as a number");
    }
  };
  auto optional_number = [&](const std::string& key) -> std::optional<Rational> {
    if (!f.contains(key)) return std::nullopt;
    return number(key);
  };

  if (!f.contains("variant")) throw DomainError("variant", "missing required field");
  ScenarioFile out;
  auto& s = out.scenario;
  s.variant = parse_variant(f.at("variant"));
  s.payoffs.benefit = number("B");
  s.payoffs.penalty = number("omega");
  if (s.variant == Variant::kPrevalence) {
    s.p_m = number("p_m");
    s.p_f = number("p_f");
    s.phi = number("phi");
  } else {
    s.p_tilde = number("p_tilde");
    s.phi_m = number("phi_m");
    s.phi_f = number("phi_f");
  }
  if (auto share = optional_number("gender_split")) s.male_share = *share;
  s.validate();

  auto d_m = optional_number("d_m");
  auto d_f = optional_number("d_f");
  if (d_m.has_value() != d_f.has_value()) throw DomainError(d_m ? "d_f" : "d_m", "policy needs both d_m and d_f");
  if (d_m) {
    out.policy = HiringPolicy{*d_m, *d_f};
    out.policy->validate();
  }
  return out;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

nlohmann::json scenario_to_json(const ScenarioFile& file) {
  const auto& s = file.scenario;
  nlohmann::json j;
  j["variant"] = lower(std::string(variant_name(s.variant)));
  if (s.variant == Variant::kPrevalence) {
    j["p_m"] = to_fraction_string(s.p_m);
    j["p_f"] = to_fraction_string(s.p_f);
    j["phi"] = to_fraction_string(s.phi);
  } else {
    j["p_tilde"] = to_fraction_string(s.p_tilde);
    j["phi_m"] = to_fraction_string(s.phi_m);
    j["phi_f"] = to_fraction_string(s.phi_f);
  }
  j["B"] = to_fraction_string(s.payoffs.benefit);
  j["omega"] = to_fraction_string(s.payoffs.penalty);
  j["gender_split"] = to_fraction_string(s.male_share);
  if (file.policy) {
    j["d_m"] = to_fraction_string(file.policy->d_m);
    j["d_f"] = to_fraction_string(file.policy->d_f);
  }
  return j;
}

}  // namespace paritylens::sd
