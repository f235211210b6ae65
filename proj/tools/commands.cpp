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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "paritylens/errors.hpp"
#include "paritylens/feasibility.hpp"
#include "paritylens/impossibility.hpp"
#include "paritylens/report.hpp"
#include "paritylens/scenario_io.hpp"
#include "paritylens/sdmodel.hpp"

namespace paritylens::cli {

namespace {

struct Output {
  bool json = false;
  std::ostream& out;
  std::ostream& err;

  void emit(const nlohmann::json& machine, const std::string& text) const {
    if (json) {
      out << machine.dump(2) << "\n";
      err << text;
    } else {
      out << text;
    }
  }
};

struct AuditArgs {
  std::string input;
  std::vector<std::string> sensitive;
  std::vector<std::string> permissible;
  std::string outcome;
  std::string decision;
  std::string weight;
  std::vector<std::string> criteria;
};

struct ScenarioArgs {
  std::string path;
  std::string d_m;
  std::string d_f;
};

bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

int cmd_audit(const AuditArgs& a, const Output& o) {
  std::vector<Criterion> requested;
  for (const auto& name : a.criteria) {
    auto c = parse_criterion(name);
    if (!c) {
      o.err << "usage error: unknown criterion '" << name << "'\n";
      return kError;
    }
    requested.push_back(*c);
  }
  if (requested.empty()) requested.assign(kAllCriteria.begin(), kAllCriteria.end());

  if (!is_json_path(a.input)) {
    if (a.outcome.empty()) {
      o.err << "usage error: --outcome is required for CSV input\n";
      return kError;
    }
    if (a.decision.empty()) {
      o.err << "usage error: --decision is required for CSV input\n";
      return kError;
    }
    if (a.sensitive.empty()) {
      o.err << "usage error: --sensitive is required for CSV input\n";
      return kError;
    }
  }

  ColumnRoles roles{a.sensitive, a.permissible, a.outcome, a.decision, a.weight};
  const Dataset data = load_dataset(a.input, roles);
  const AuditReport report = build_audit_report(data);
  o.emit(audit_to_json(report), format_audit_text(report));

  for (const auto& v : report.verdicts) {
    if (!v.satisfied && std::find(requested.begin(), requested.end(), v.criterion) != requested.end()) {
      return kViolated;
    }
  }
  return kOk;
}

sd::ScenarioFile load_with_overrides(const ScenarioArgs& a) {
  auto file = sd::load_scenario(a.path);
  if (!a.d_m.empty() || !a.d_f.empty()) {
    sd::HiringPolicy p = file.policy.value_or(sd::HiringPolicy{});
    if (!a.d_m.empty()) p.d_m = parse_rational(a.d_m);
    if (!a.d_f.empty()) p.d_f = parse_rational(a.d_f);
    p.validate();
    file.policy = p;
  }
  return file;
}

std::string scenario_text(const sd::PhelpsianScenario& s) {
  std::ostringstream os;
  os << "variant: " << sd::variant_name(s.variant) << "\n";
  if (s.variant == sd::Variant::kPrevalence) {
    os << "p_m = " << to_fraction_string(s.p_m) << "  p_f = " << to_fraction_string(s.p_f)
       << "  phi = " << to_fraction_string(s.phi) << "\n";
  } else {
    os << "p = " << to_fraction_string(s.p_tilde) << "  phi_m = " << to_fraction_string(s.phi_m)
       << "  phi_f = " << to_fraction_string(s.phi_f) << "\n";
  }
  os << "B = " << to_fraction_string(s.payoffs.benefit) << "  omega = " << to_fraction_string(s.payoffs.penalty)
     << "\n";
  return os.str();
}

std::string policy_text(const sd::HiringPolicy& p) {
  return "policy: d_m = " + format_rate_cell(p.d_m) + "  d_f = " + format_rate_cell(p.d_f) + "\n";
}

nlohmann::json policy_json(const sd::HiringPolicy& p) {
  return {{"d_m", rational_to_json(p.d_m)}, {"d_f", rational_to_json(p.d_f)}};
}

int cmd_sd_rates(const ScenarioArgs& a, const Output& o) {
  const auto file = load_with_overrides(a);
  const auto& s = file.scenario;
  const bool defaulted = !file.policy.has_value();
  const sd::HiringPolicy policy = file.policy.value_or(sd::optimal_policy(s));
  const auto rates = sd::model_rates(s, policy);

  std::ostringstream text;
  text << kToolVersion << "\n" << tolerance_header(Mode::kExact) << "\n" << scenario_text(s) << policy_text(policy);
  if (defaulted) text << "(no policy given; using the optimal policy)\n";
  text << format_model_rates_text(rates);

  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["scenario"] = sd::scenario_to_json(file);
  j["policy"] = policy_json(policy);
  j["policy_defaulted"] = defaulted;
  j["rates"] = model_rates_to_json(rates);
  o.emit(j, text.str());
  return kOk;
}

int cmd_sd_optimal(const ScenarioArgs& a, const Output& o) {
  const auto file = load_with_overrides(a);
  const auto& s = file.scenario;
  const Rational threshold = sd::optimal_threshold(s.payoffs);
  const auto policy = sd::optimal_policy(s);
  const auto rates = sd::model_rates(s, policy);

  std::ostringstream text;
  text << kToolVersion << "\n" << tolerance_header(Mode::kExact) << "\n" << scenario_text(s);
  text << "threshold: s̄ = " << to_fraction_string(threshold) << " (" << to_decimal_string(threshold) << ")\n";
  nlohmann::json posts = nlohmann::json::object();
  for (auto g : sd::kGenders) {
    text << "posteriors " << sd::gender_label(g) << ":";
    nlohmann::json row = nlohmann::json::object();
    for (int score = 1; score <= 3; ++score) {
      const Rational q = sd::posterior(s, g, score);
      text << "  x=" << score << " " << format_rate_cell(q);
      row[std::to_string(score)] = rational_to_json(q);
    }
    text << "\n";
    posts[std::string(sd::gender_label(g))] = std::move(row);
  }
  text << "optimal " << policy_text(policy) << format_model_rates_text(rates);

  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["threshold"] = rational_to_json(threshold);
  j["posteriors"] = std::move(posts);
  j["policy"] = policy_json(policy);
  j["rates"] = model_rates_to_json(rates);
  o.emit(j, text.str());
  return kOk;
}

int cmd_sd_feasible(const ScenarioArgs& a, const std::string& goal_name, unsigned grid, const Output& o) {
  auto goal = parse_criterion(goal_name);
  if (!goal) {
    o.err << "usage error: unknown criterion '" << goal_name << "'\n";
    return kError;
  }
  if (grid < 2) throw DomainError("grid", "must be at least 2");
  const auto file = sd::load_scenario(a.path);
  sd::FeasibilityOptions opts;
  opts.grid = grid;
  const auto result = sd::feasibility_search(file.scenario, *goal, opts);
  std::ostringstream text;
  text << kToolVersion << "\n" << scenario_text(file.scenario) << "grid: " << grid << " x " << grid << "\n"
       << format_feasibility_text(result);
  o.emit(feasibility_to_json(result), text.str());
  return kOk;
}

int cmd_sd_simulate(const ScenarioArgs& a, std::uint64_t n, std::uint64_t seed, const std::string& out_path,
                    const Output& o) {
  if (n == 0) throw DomainError("n", "sample size must be positive");
  const auto file = load_with_overrides(a);
  const auto& s = file.scenario;
  const sd::HiringPolicy policy = file.policy.value_or(sd::optimal_policy(s));
  sd::SimulationOptions opts;
  opts.n = n;
  opts.seed = seed;
  opts.threads = worker_count();
  const Dataset data = sd::simulate(s, policy, opts);

  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write " + out_path);
    write_csv(f, data);
  }

  const auto model = sd::model_rates(s, policy);
  const auto confusion = confusion_by_group(data);
  std::ostringstream text;
  text << kToolVersion << "\n" << scenario_text(s) << policy_text(policy);
  text << "n = " << n << "  seed = " << seed << "\n";
  nlohmann::json groups = nlohmann::json::array();
  for (auto g : sd::kGenders) {
    const Profile gp = sd::gender_profile(g);
    auto it = std::find_if(confusion.begin(), confusion.end(), [&](const auto& c) { return c.group == gp; });
    if (it == confusion.end()) continue;
    const RateBundle emp = paritylens::rates(*it);
    const auto& m = model[g];
    text << "  gender " << sd::gender_label(g) << "  TP=" << it->tp << " FP=" << it->fp << " FN=" << it->fn
         << " TN=" << it->tn << "\n";
    auto line = [&](const char* name, const Rate& e, const Rate& mv) {
      text << "    " << name << " empirical " << format_rate_cell(e) << "  model " << format_rate_cell(mv) << "\n";
    };
    line("TPR", emp.tpr, m.tpr);
    line("TNR", emp.tnr, m.tnr);
    line("PPV", emp.ppv, m.ppv);
    line("NPV", emp.npv, m.npv);
    groups.push_back({{"gender", std::string(sd::gender_label(g))},
                      {"tp", it->tp},
                      {"fp", it->fp},
                      {"fn", it->fn},
                      {"tn", it->tn},
                      {"empirical", {{"tpr", rate_to_json(emp.tpr)},
                                     {"tnr", rate_to_json(emp.tnr)},
                                     {"ppv", rate_to_json(emp.ppv)},
                                     {"npv", rate_to_json(emp.npv)}}}});
  }
  if (!out_path.empty()) text << "records written to " << out_path << "\n";

  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["n"] = n;
  j["seed"] = seed;
  j["policy"] = policy_json(policy);
  j["groups"] = std::move(groups);
  j["model"] = model_rates_to_json(model);
  o.emit(j, text.str());
  return kOk;
}

int cmd_verify(const EnumerationBounds& bounds, bool progress, const Output& o) {
  ProgressFn fn;
  if (progress) {
    fn = [&o](std::uint64_t done, std::uint64_t total) { o.err << "progress: " << done << "/" << total << "\n"; };
  }
  const auto summary = enumerate_verify(bounds, worker_count(), fn);
  o.emit(verification_to_json(summary), format_verification_text(summary, bounds));
  return summary.counterexamples.empty() ? kOk : kViolated;
}

void add_scenario_options(CLI::App* sub, ScenarioArgs& a, bool policy_overrides) {
  sub->add_option("scenario", a.path, "Scenario file (key = value lines or JSON)")->required();
  if (policy_overrides) {
    sub->add_option("--d-m", a.d_m, "Override the hiring probability at x=2 for men");
    sub->add_option("--d-f", a.d_f, "Override the hiring probability at x=2 for women");
  }
}

}  // namespace

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PARITYLENS_THREADS")) {
    unsigned cap = 0;
    const std::string_view sv(env);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), cap);
    if (ec == std::errc() && ptr == sv.data() + sv.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group fairness audits, impossibility checks and a statistical discrimination hiring model.",
               "paritylens"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON on stdout; human text on stderr");
  app.set_version_flag("--version", kToolVersion);

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Audit a dataset against every fairness criterion");
  audit_cmd->add_option("--input,-i", audit.input, "CSV or JSON dataset")->required();
  audit_cmd->add_option("--sensitive", audit.sensitive, "Sensitive trait column(s)");
  audit_cmd->add_option("--permissible", audit.permissible, "Permissible trait column(s)");
  audit_cmd->add_option("--outcome", audit.outcome, "Outcome column (0/1)");
  audit_cmd->add_option("--decision", audit.decision, "Decision column (0/1)");
  audit_cmd->add_option("--weight", audit.weight, "Optional multiplicity column");
  audit_cmd->add_option("--criteria", audit.criteria, "Criteria that determine the exit code (default: all)");

  ScenarioArgs rates_args, optimal_args, feasible_args, sim_args;
  auto* rates_cmd = app.add_subcommand("sd-rates", "Closed-form rates of a hiring policy");
  add_scenario_options(rates_cmd, rates_args, true);
  auto* optimal_cmd = app.add_subcommand("sd-optimal", "Threshold, posteriors and optimal policy");
  add_scenario_options(optimal_cmd, optimal_args, false);

  std::string goal = "erb";
  unsigned grid = 101;
  auto* feasible_cmd = app.add_subcommand("sd-feasible", "Search the policy square for a fairness criterion");
  add_scenario_options(feasible_cmd, feasible_args, false);
  feasible_cmd->add_option("--goal", goal, "Criterion to satisfy (e.g. erb, pp, ppv, tpr)");
  feasible_cmd->add_option("--grid", grid, "Grid points per axis");

  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("sd-simulate", "Draw a synthetic applicant pool");
  add_scenario_options(sim_cmd, sim_args, true);
  sim_cmd->add_option("--n", n, "Number of applicants")->required();
  sim_cmd->add_option("--seed", seed, "Random seed");
  sim_cmd->add_option("--out", sim_out, "Write the records as CSV");

  EnumerationBounds bounds;
  bool progress = false;
  auto* verify_cmd = app.add_subcommand("verify-impossibility", "Enumerate small instances of the impossibility theorem");
  verify_cmd->add_option("--x-arity", bounds.x_arity, "Values of the permissible trait");
  verify_cmd->add_option("--mass-denominator", bounds.mass_denominator, "Largest common denominator of masses");
  verify_cmd->add_option("--prob-denominator", bounds.prob_denominator, "Largest denominator of hire probabilities");
  verify_cmd->add_flag("--progress", progress, "Report progress on stderr");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kError;
  }

  const Output o{json, out, err};
  try {
    if (*audit_cmd) return cmd_audit(audit, o);
    if (*rates_cmd) return cmd_sd_rates(rates_args, o);
    if (*optimal_cmd) return cmd_sd_optimal(optimal_args, o);
    if (*feasible_cmd) return cmd_sd_feasible(feasible_args, goal, grid, o);
    if (*sim_cmd) return cmd_sd_simulate(sim_args, n, seed, sim_out, o);
    if (*verify_cmd) return cmd_verify(bounds, progress, o);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace paritylens::cli
