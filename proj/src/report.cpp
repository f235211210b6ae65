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

#include "paritylens/report.hpp"

#include <iomanip>
#include <sstream>

#include "paritylens/errors.hpp"

namespace paritylens {

namespace {

nlohmann::json integer_to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str(10);
}

mpz_class integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
  throw SchemaError("expected an integer");
}

nlohmann::json profile_to_json(const std::vector<TraitDimension>& dims, const Profile& p) {
  auto arr = nlohmann::json::array();
  for (std::size_t k = 0; k < p.size(); ++k) arr.push_back(k < dims.size() ? dims[k].label(p[k]) : std::to_string(p[k]));
  return arr;
}

Profile profile_from_json(const std::vector<TraitDimension>& dims, const nlohmann::json& j) {
  Profile p;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto label = j[k].get<std::string>();
    if (k >= dims.size()) throw SchemaError("profile longer than schema");
    auto id = dims[k].find(label);
    if (!id) throw SchemaError("unknown label '" + label + "' for trait '" + dims[k].name() + "'");
    p.push_back(*id);
  }
  return p;
}

nlohmann::json dims_to_json(const std::vector<TraitDimension>& dims) {
  auto arr = nlohmann::json::array();
  for (const auto& d : dims) arr.push_back({{"name", d.name()}, {"values", d.labels()}});
  return arr;
}

std::vector<TraitDimension> dims_from_json(const nlohmann::json& j) {
  std::vector<TraitDimension> out;
  for (const auto& d : j) out.emplace_back(d.at("name").get<std::string>(), d.at("values").get<std::vector<std::string>>());
  return out;
}

nlohmann::json rates_to_json(const RateBundle& r) {
  return {{"tpr", rate_to_json(r.tpr)},        {"tnr", rate_to_json(r.tnr)},
          {"ppv", rate_to_json(r.ppv)},        {"npv", rate_to_json(r.npv)},
          {"base_rate", rate_to_json(r.base_rate)}, {"hire_rate", rate_to_json(r.hire_rate)}};
}

RateBundle rates_from_json(const nlohmann::json& j) {
  RateBundle r;
  r.tpr = rate_from_json(j.at("tpr"));
  r.tnr = rate_from_json(j.at("tnr"));
  r.ppv = rate_from_json(j.at("ppv"));
  r.npv = rate_from_json(j.at("npv"));
  r.base_rate = rate_from_json(j.at("base_rate"));
  r.hire_rate = rate_from_json(j.at("hire_rate"));
  return r;
}

std::string mode_name(Mode m) { return m == Mode::kExact ? "exact" : "float"; }

Mode mode_from_name(const std::string& s) {
  if (s == "exact") return Mode::kExact;
  if (s == "float") return Mode::kFloat;
  throw SchemaError("unknown mode '" + s + "'");
}

}  // namespace

nlohmann::json rational_to_json(const Rational& value) {
  return {{"num", integer_to_json(value.get_num())}, {"den", integer_to_json(value.get_den())}};
}

Rational rational_from_json(const nlohmann::json& j) {
  Rational r(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
  if (r.get_den() == 0) throw SchemaError("zero denominator");
  r.canonicalize();
  return r;
}

nlohmann::json rate_to_json(const Rate& rate) { return rate ? rational_to_json(*rate) : nlohmann::json(nullptr); }

Rate rate_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j);
}

std::string format_rate_cell(const Rate& rate) {
  if (!rate) return "UNDEFINED";
  return to_decimal_string(*rate, 6) + " (" + to_fraction_string(*rate) + ")";
}

std::string tolerance_header(Mode mode) {
  if (mode == Mode::kExact) return "mode: exact (rational comparisons, tolerance 0)";
  return "mode: float (tolerance 1e-9)";
}

nlohmann::json verdict_to_json(const FairnessVerdict& v, const Schema& schema) {
  nlohmann::json j;
  j["criterion"] = std::string(criterion_name(v.criterion));
  j["satisfied"] = v.satisfied;
  j["gap"] = rational_to_json(v.gap);
  if (v.witness) {
    const auto& w = *v.witness;
    nlohmann::json jw;
    jw["group_a"] = profile_to_json(schema.sensitive, w.group_a);
    jw["group_b"] = profile_to_json(schema.sensitive, w.group_b);
    if (w.permissible) jw["x"] = profile_to_json(schema.permissible, *w.permissible);
    jw["value_a"] = rate_to_json(w.value_a);
    jw["value_b"] = rate_to_json(w.value_b);
    jw["kind"] = w.kind == WitnessKind::kValueGap ? "value_gap" : "undefined_mismatch";
    j["witness"] = std::move(jw);
  } else {
    j["witness"] = nullptr;
  }
  j["mode"] = mode_name(v.mode);
  j["empirical"] = v.empirical;
  j["undefined_match"] = v.undefined_match;
  return j;
}

FairnessVerdict verdict_from_json(const nlohmann::json& j, const Schema& schema) {
  FairnessVerdict v;
  auto c = parse_criterion(j.at("criterion").get<std::string>());
  if (!c) throw SchemaError("unknown criterion");
  v.criterion = *c;
  v.satisfied = j.at("satisfied").get<bool>();
  v.gap = rational_from_json(j.at("gap"));
  if (!j.at("witness").is_null()) {
    const auto& jw = j.at("witness");
    Witness w;
    w.group_a = profile_from_json(schema.sensitive, jw.at("group_a"));
    w.group_b = profile_from_json(schema.sensitive, jw.at("group_b"));
    if (jw.contains("x")) w.permissible = profile_from_json(schema.permissible, jw.at("x"));
    w.value_a = rate_from_json(jw.at("value_a"));
    w.value_b = rate_from_json(jw.at("value_b"));
    w.kind = jw.value("kind", std::string("value_gap")) == "value_gap" ? WitnessKind::kValueGap
                                                                        : WitnessKind::kUndefinedMismatch;
    v.witness = std::move(w);
  }
  v.mode = mode_from_name(j.value("mode", std::string("exact")));
  v.empirical = j.value("empirical", false);
  v.undefined_match = j.value("undefined_match", false);
  return v;
}

std::string format_verdict_line(const FairnessVerdict& v, const Schema& schema) {
  std::ostringstream os;
  os << std::left << std::setw(24) << criterion_name(v.criterion) << (v.satisfied ? "satisfied" : "VIOLATED ")
     << "  gap " << to_decimal_string(v.gap) << " (" << to_fraction_string(v.gap) << ")";
  if (v.witness) {
    const auto& w = *v.witness;
    os << "  witness " << schema.sensitive_label(w.group_a) << " vs " << schema.sensitive_label(w.group_b);
    if (w.permissible) os << " at " << schema.permissible_label(*w.permissible);
    os << ": " << format_rate(w.value_a) << " vs " << format_rate(w.value_b);
    if (w.kind == WitnessKind::kUndefinedMismatch) os << " [undefined mismatch]";
  }
  if (v.empirical) os << "  [empirical]";
  if (v.undefined_match) os << "  [undefined==undefined used]";
  return os.str();
}

AuditReport build_audit_report(const Dataset& data) {
  AuditReport r;
  r.n = data.n();
  r.schema = data.schema();
  r.confusion = confusion_by_group(data);
  for (const auto& c : r.confusion) r.rates.push_back(paritylens::rates(c));
  r.verdicts = check_all(data);
  r.conditions = theorem_conditions(joint_distribution(data));
  return r;
}

nlohmann::json conditions_to_json(const TheoremConditions& tc, const Schema& schema) {
  nlohmann::json j;
  j["perfect_predictor"] = tc.perfect_predictor;
  j["equal_base_rates"] = tc.equal_base_rates;
  auto posts = nlohmann::json::array();
  for (const auto& [cell, v] : tc.posteriors) {
    posts.push_back({{"group", profile_to_json(schema.sensitive, cell.sensitive)},
                     {"x", profile_to_json(schema.permissible, cell.permissible)},
                     {"value", rational_to_json(v)}});
  }
  j["posteriors"] = std::move(posts);
  auto bases = nlohmann::json::array();
  for (const auto& [g, v] : tc.base_rates) {
    bases.push_back({{"group", profile_to_json(schema.sensitive, g)}, {"value", rational_to_json(v)}});
  }
  j["base_rates"] = std::move(bases);
  auto zeros = nlohmann::json::array();
  for (const auto& cell : tc.zero_mass_cells) {
    zeros.push_back({{"group", profile_to_json(schema.sensitive, cell.sensitive)},
                     {"x", profile_to_json(schema.permissible, cell.permissible)}});
  }
  j["zero_mass_cells"] = std::move(zeros);
  return j;
}

TheoremConditions conditions_from_json(const nlohmann::json& j, const Schema& schema) {
  TheoremConditions tc;
  tc.perfect_predictor = j.at("perfect_predictor").get<bool>();
  tc.equal_base_rates = j.at("equal_base_rates").get<bool>();
  for (const auto& p : j.at("posteriors")) {
    tc.posteriors.emplace(CellKey{profile_from_json(schema.sensitive, p.at("group")),
                                  profile_from_json(schema.permissible, p.at("x"))},
                          rational_from_json(p.at("value")));
  }
  for (const auto& b : j.at("base_rates")) {
    tc.base_rates.emplace(profile_from_json(schema.sensitive, b.at("group")), rational_from_json(b.at("value")));
  }
  for (const auto& z : j.at("zero_mass_cells")) {
    tc.zero_mass_cells.push_back(
        CellKey{profile_from_json(schema.sensitive, z.at("group")), profile_from_json(schema.permissible, z.at("x"))});
  }
  return tc;
}

nlohmann::json audit_to_json(const AuditReport& r) {
  nlohmann::json j;
  j["tool_version"] = r.tool_version;
  j["mode"] = mode_name(r.mode);
  j["n"] = r.n;
  j["schema"] = {{"sensitive", dims_to_json(r.schema.sensitive)},
                 {"permissible", dims_to_json(r.schema.permissible)},
                 {"outcome", r.schema.outcome},
                 {"decision", r.schema.decision}};
  auto groups = nlohmann::json::array();
  for (std::size_t i = 0; i < r.confusion.size(); ++i) {
    const auto& c = r.confusion[i];
    groups.push_back({{"group", profile_to_json(r.schema.sensitive, c.group)},
                      {"label", r.schema.sensitive_label(c.group)},
                      {"tp", c.tp},
                      {"fp", c.fp},
                      {"fn", c.fn},
                      {"tn", c.tn},
                      {"rates", rates_to_json(r.rates[i])}});
  }
  j["groups"] = std::move(groups);
  auto verdicts = nlohmann::json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_to_json(v, r.schema));
  j["verdicts"] = std::move(verdicts);
  j["theorem_conditions"] = conditions_to_json(r.conditions, r.schema);
  return j;
}

AuditReport audit_from_json(const nlohmann::json& j) {
  AuditReport r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.mode = mode_from_name(j.at("mode").get<std::string>());
  r.n = j.at("n").get<std::uint64_t>();
  const auto& js = j.at("schema");
  r.schema.sensitive = dims_from_json(js.at("sensitive"));
  r.schema.permissible = dims_from_json(js.at("permissible"));
  r.schema.outcome = js.at("outcome").get<std::string>();
  r.schema.decision = js.at("decision").get<std::string>();
  for (const auto& g : j.at("groups")) {
    GroupConfusion c;
    c.group = profile_from_json(r.schema.sensitive, g.at("group"));
    c.tp = g.at("tp").get<std::uint64_t>();
    c.fp = g.at("fp").get<std::uint64_t>();
    c.fn = g.at("fn").get<std::uint64_t>();
    c.tn = g.at("tn").get<std::uint64_t>();
    r.confusion.push_back(std::move(c));
    r.rates.push_back(rates_from_json(g.at("rates")));
  }
  for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v, r.schema));
  r.conditions = conditions_from_json(j.at("theorem_conditions"), r.schema);
  return r;
}

std::string format_audit_text(const AuditReport& r) {
  std::ostringstream os;
  os << r.tool_version << "\n" << tolerance_header(r.mode) << "\n";
  os << "records: " << r.n << "  groups: " << r.confusion.size() << "\n";
  os << "sensitive:";
  for (const auto& d : r.schema.sensitive) os << " " << d.name();
  os << "  permissible:";
  if (r.schema.permissible.empty()) os << " (none)";
  for (const auto& d : r.schema.permissible) os << " " << d.name();
  os << "  outcome: " << r.schema.outcome << "  decision: " << r.schema.decision << "\n\n";

  os << "group rates\n";
  for (std::size_t i = 0; i < r.confusion.size(); ++i) {
    const auto& c = r.confusion[i];
    const auto& b = r.rates[i];
    os << "  " << r.schema.sensitive_label(c.group) << "  TP=" << c.tp << " FP=" << c.fp << " FN=" << c.fn
       << " TN=" << c.tn << "\n";
    os << "    TPR " << format_rate_cell(b.tpr) << "   TNR " << format_rate_cell(b.tnr) << "\n";
    os << "    PPV " << format_rate_cell(b.ppv) << "   NPV " << format_rate_cell(b.npv) << "\n";
    os << "    base rate " << format_rate_cell(b.base_rate) << "   hire rate " << format_rate_cell(b.hire_rate) << "\n";
  }
  os << "\ncriteria\n";
  for (const auto& v : r.verdicts) os << "  " << format_verdict_line(v, r.schema) << "\n";
  os << "\ntheorem conditions\n";
  os << "  perfect predictor: " << (r.conditions.perfect_predictor ? "yes" : "no") << "\n";
  os << "  equal base rates:  " << (r.conditions.equal_base_rates ? "yes" : "no") << "\n";
  for (const auto& [g, v] : r.conditions.base_rates) {
    os << "    P[y=1 | " << r.schema.sensitive_label(g) << "] = " << format_rate_cell(v) << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json report_case_to_json(const CounterexampleReport& c) {
  auto dist = nlohmann::json::array();
  for (const auto& [cell, m] : c.distribution.cells()) {
    dist.push_back({{"a", cell.sensitive}, {"x", cell.permissible}, {"y0", rational_to_json(m[0])},
                    {"y1", rational_to_json(m[1])}});
  }
  auto alg = nlohmann::json::array();
  for (const auto& [cell, p] : c.algorithm.table()) {
    alg.push_back({{"a", cell.sensitive}, {"x", cell.permissible}, {"p", rational_to_json(p)}});
  }
  auto base = nlohmann::json::array();
  for (const auto& [g, v] : c.conditions.base_rates) base.push_back({{"a", g}, {"value", rational_to_json(v)}});
  return {{"distribution", std::move(dist)},
          {"algorithm", std::move(alg)},
          {"predictive_parity", c.predictive_parity.combined.satisfied},
          {"error_rate_balance", c.error_rate_balance.combined.satisfied},
          {"perfect_predictor", c.conditions.perfect_predictor},
          {"equal_base_rates", c.conditions.equal_base_rates},
          {"base_rates", std::move(base)}};
}

}  // namespace

nlohmann::json verification_to_json(const VerificationSummary& s) {
  nlohmann::json j;
  j["examined"] = s.examined;
  j["satisfied_both"] = s.satisfied_both;
  j["perfect_predictor_count"] = s.perfect_predictor_count;
  j["equal_base_rates_count"] = s.equal_base_rates_count;
  auto ce = nlohmann::json::array();
  for (const auto& c : s.counterexamples) ce.push_back(report_case_to_json(c));
  j["counterexamples"] = std::move(ce);
  auto arts = nlohmann::json::array();
  for (const auto& c : s.convention_artifacts) arts.push_back(report_case_to_json(c));
  j["convention_artifacts"] = {{"count", s.convention_artifact_count}, {"examples", std::move(arts)}};
  j["distributions"] = s.distributions;
  j["algorithms_per_distribution"] = s.algorithms_per_distribution;
  j["identity_checks"] = s.identity_checks;
  j["identity_failures"] = s.identity_failures;
  return j;
}

std::string format_verification_text(const VerificationSummary& s, const EnumerationBounds& b) {
  std::ostringstream os;
  os << kToolVersion << "\n" << tolerance_header(Mode::kExact) << "\n";
  os << "bounds: groups=" << b.groups << " x-arity=" << b.x_arity << " mass-denominator<=" << b.mass_denominator
     << " prob-denominator<=" << b.prob_denominator << "\n";
  os << "distributions:               " << s.distributions << "\n";
  os << "algorithms per distribution: " << s.algorithms_per_distribution << "\n";
  os << "pairs examined:              " << s.examined << "\n";
  os << "PP and ERB both satisfied:   " << s.satisfied_both << "\n";
  os << "  with perfect predictor:    " << s.perfect_predictor_count << "\n";
  os << "  with equal base rates:     " << s.equal_base_rates_count << "\n";
  os << "counterexamples:             " << s.counterexamples.size() << "\n";
  os << "convention artifacts:        " << s.convention_artifact_count << "\n";
  os << "identity checks:             " << s.identity_checks << " (" << s.identity_failures << " failed)\n";
  return os.str();
}

nlohmann::json model_rates_to_json(const sd::ModelRates& rates) {
  nlohmann::json j;
  for (auto g : sd::kGenders) {
    const auto& r = rates[g];
    j[std::string(sd::gender_label(g))] = {{"ppv", rate_to_json(r.ppv)},
                                           {"npv", rate_to_json(r.npv)},
                                           {"tpr", rate_to_json(r.tpr)},
                                           {"tnr", rate_to_json(r.tnr)},
                                           {"hire_rate", rate_to_json(r.hire_rate)}};
  }
  return j;
}

std::string format_model_rates_text(const sd::ModelRates& rates) {
  std::ostringstream os;
  for (auto g : sd::kGenders) {
    const auto& r = rates[g];
    os << "  gender " << sd::gender_label(g) << "\n";
    os << "    PPV " << format_rate_cell(r.ppv) << "   NPV " << format_rate_cell(r.npv) << "\n";
    os << "    TPR " << format_rate_cell(r.tpr) << "   TNR " << format_rate_cell(r.tnr) << "\n";
    os << "    hire rate " << format_rate_cell(r.hire_rate) << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json point_to_json(const sd::FeasiblePoint& p) {
  nlohmann::json j = {{"d_m", p.d_m}, {"d_f", p.d_f}, {"gap", p.gap}, {"corner", p.corner}};
  if (p.exact_d_m) {
    j["exact_d_m"] = rational_to_json(*p.exact_d_m);
    j["exact_d_f"] = rational_to_json(*p.exact_d_f);
  }
  return j;
}

std::string point_text(const sd::FeasiblePoint& p) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(9) << "(" << p.d_m << ", " << p.d_f << ")";
  if (p.exact_d_m) os << "  exact (" << to_fraction_string(*p.exact_d_m) << ", " << to_fraction_string(*p.exact_d_f) << ")";
  if (p.corner) os << "  [corner]";
  return os.str();
}

}  // namespace

nlohmann::json feasibility_to_json(const sd::FeasibilityResult& r) {
  nlohmann::json j;
  j["goal"] = std::string(criterion_name(r.goal));
  j["variant"] = std::string(sd::variant_name(r.variant));
  j["shape"] = std::string(sd::shape_name(r.shape));
  j["degenerate"] = r.degenerate;
  j["tolerance"] = kFloatTolerance;
  auto pts = nlohmann::json::array();
  for (const auto& p : r.points) pts.push_back(point_to_json(p));
  j["points"] = std::move(pts);
  auto bnd = nlohmann::json::array();
  for (const auto& p : r.boundary) bnd.push_back(point_to_json(p));
  j["boundary"] = std::move(bnd);
  auto fnd = nlohmann::json::array();
  for (const auto& f : r.findings) fnd.push_back({{"claim", f.claim}, {"holds", f.holds}, {"detail", f.detail}});
  j["findings"] = std::move(fnd);
  return j;
}

std::string format_feasibility_text(const sd::FeasibilityResult& r) {
  std::ostringstream os;
  os << "goal: " << criterion_name(r.goal) << "  variant: " << sd::variant_name(r.variant)
     << (r.degenerate ? "  [degenerate]" : "") << "\n";
  os << tolerance_header(Mode::kFloat) << "\n";
  if (r.points.empty()) {
    os << "feasible set: empty\n";
  } else {
    os << "feasible set: " << sd::shape_name(r.shape) << " (" << r.points.size() << " points)\n";
    const std::size_t shown = std::min<std::size_t>(r.points.size(), 12);
    for (std::size_t i = 0; i < shown; ++i) os << "  " << point_text(r.points[i]) << "\n";
    if (shown < r.points.size()) os << "  ... " << r.points.size() - shown << " more\n";
  }
  for (const auto& f : r.findings) {
    os << (f.holds ? "[holds]     " : "[fails]     ") << f.claim;
    if (!f.detail.empty()) os << "  (" << f.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace paritylens
