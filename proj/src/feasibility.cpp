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

#include "paritylens/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "paritylens/errors.hpp"

namespace paritylens::sd {

std::string_view shape_name(FeasibleShape s) {
  switch (s) {
    case FeasibleShape::kEmpty: return "empty";
    case FeasibleShape::kIsolated: return "isolated";
    case FeasibleShape::kCurve: return "curve";
  }
  return "unknown";
}

namespace {

constexpr double kMergeDistance = 1e-7;
constexpr double kCornerSlack = 1e-12;

bool is_corner_value(double v) { return std::fabs(v) <= kCornerSlack || std::fabs(v - 1.0) <= kCornerSlack; }

struct Equation {
  MobiusRate male;
  MobiusRate female;

  const MobiusRate& curve(Gender g) const { return g == Gender::kMale ? male : female; }
};

// male(d_m) - female(d_f); 0 when both UNDEFINED, empty when exactly one is.
std::optional<double> gap(const Equation& eq, double dm, double df) {
  auto a = eq.male.at(dm);
  auto b = eq.female.at(df);
  if (!a && !b) return 0.0;
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

bool exact_match(const Equation& eq, const Rational& dm, const Rational& df) {
  return eq.male.at(dm) == eq.female.at(df);
}

Rational grid_value(unsigned i, unsigned k) { return make_rational(i, k - 1); }

// Roots of moving(d) == target on [0, 1]: grid points within epsilon plus
// bisection-refined sign changes between neighbouring grid points.
std::vector<double> roots_on_line(const MobiusRate& moving, double target, const FeasibilityOptions& opt) {
  const unsigned k = opt.grid;
  std::vector<std::optional<double>> g(k);
  for (unsigned j = 0; j < k; ++j) {
    auto v = moving.at(static_cast<double>(j) / (k - 1));
    if (v) g[j] = *v - target;
  }
  std::vector<double> roots;
  for (unsigned j = 0; j < k; ++j) {
    if (g[j] && std::fabs(*g[j]) <= opt.epsilon) roots.push_back(static_cast<double>(j) / (k - 1));
  }
  for (unsigned j = 0; j + 1 < k; ++j) {
    if (!g[j] || !g[j + 1]) continue;
    if (std::fabs(*g[j]) <= opt.epsilon || std::fabs(*g[j + 1]) <= opt.epsilon) continue;
    if ((*g[j] < 0) == (*g[j + 1] < 0)) continue;
    double lo = static_cast<double>(j) / (k - 1);
    double hi = static_cast<double>(j + 1) / (k - 1);
    double glo = *g[j];
    for (int it = 0; it < opt.bisection_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto gm = moving.at(mid);
      if (!gm) break;
      const double v = *gm - target;
      if ((v < 0) == (glo < 0)) {
        lo = mid;
        glo = v;
      } else {
        hi = mid;
      }
    }
    const double r = 0.5 * (lo + hi);
    if (auto v = moving.at(r); v && std::fabs(*v - target) <= opt.epsilon) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

class PointSet {
 public:
  void add(double dm, double df, std::optional<Rational> exact_dm = {}, std::optional<Rational> exact_df = {}) {
    for (auto& p : points_) {
      if (std::fabs(p.d_m - dm) < kMergeDistance && std::fabs(p.d_f - df) < kMergeDistance) {
        if (exact_dm && !p.exact_d_m) {
          p.exact_d_m = std::move(exact_dm);
          p.exact_d_f = std::move(exact_df);
          p.d_m = dm;
          p.d_f = df;
        }
        return;
      }
    }
    FeasiblePoint p;
    p.d_m = dm;
    p.d_f = df;
    p.exact_d_m = std::move(exact_dm);
    p.exact_d_f = std::move(exact_df);
    p.corner = is_corner_value(dm) && is_corner_value(df);
    points_.push_back(std::move(p));
  }

  void add_exact(const Rational& dm, const Rational& df) { add(to_double(dm), to_double(df), dm, df); }

  std::vector<FeasiblePoint> take(const std::vector<const Equation*>& eqs) {
    for (auto& p : points_) {
      p.gap = 0.0;
      for (const auto* eq : eqs) {
        auto g = gap(*eq, p.d_m, p.d_f);
        p.gap = std::max(p.gap, g ? std::fabs(*g) : INFINITY);
      }
      if (p.exact_d_m) p.gap = 0.0;
    }
    std::sort(points_.begin(), points_.end(),
              [](const auto& a, const auto& b) { return std::tie(a.d_m, a.d_f) < std::tie(b.d_m, b.d_f); });
    return std::move(points_);
  }

 private:
  std::vector<FeasiblePoint> points_;
};

// One rate: every grid row solved for d_f and every grid column for d_m,
// by bisection and exactly.
void single_rate(const Equation& eq, const FeasibilityOptions& opt, PointSet& out) {
  const unsigned k = opt.grid;
  for (auto fixed : kGenders) {
    const Gender moving = fixed == Gender::kMale ? Gender::kFemale : Gender::kMale;
    for (unsigned i = 0; i < k; ++i) {
      const double v = static_cast<double>(i) / (k - 1);
      auto place = [&](double fixed_val, double moving_val) {
        return fixed == Gender::kMale ? std::pair{fixed_val, moving_val} : std::pair{moving_val, fixed_val};
      };
      if (auto t = eq.curve(fixed).at(v)) {
        for (double r : roots_on_line(eq.curve(moving), *t, opt)) {
          auto [dm, df] = place(v, r);
          out.add(dm, df);
        }
      }
      const Rational vq = grid_value(i, k);
      auto sol = eq.curve(moving).solve(eq.curve(fixed).at(vq));
      if (sol.kind == MobiusRate::Solutions::kOne) {
        if (fixed == Gender::kMale) {
          out.add_exact(vq, sol.root);
        } else {
          out.add_exact(sol.root, vq);
        }
      } else if (sol.kind == MobiusRate::Solutions::kAll) {
        for (unsigned j = 0; j < k; ++j) {
          if (fixed == Gender::kMale) {
            out.add_exact(vq, grid_value(j, k));
          } else {
            out.add_exact(grid_value(j, k), vq);
          }
        }
      }
    }
  }
}

// Two rates: walk the parity curve of `first` along rows (and columns) and
// look for zeros of the `second` gap.
void two_rates(const Equation& first, const Equation& second, const FeasibilityOptions& opt, PointSet& out,
               PointSet& boundary) {
  const unsigned k = opt.grid;
  for (auto fixed : kGenders) {
    const Gender moving = fixed == Gender::kMale ? Gender::kFemale : Gender::kMale;
    auto place = [&](double fixed_val, double moving_val) {
      return fixed == Gender::kMale ? std::pair{fixed_val, moving_val} : std::pair{moving_val, fixed_val};
    };
    // Point on the first curve at a given fixed-axis value, via the
    // closed-form inverse of the moving rate.
    auto on_curve = [&](double v) -> std::optional<double> {
      auto t = first.curve(fixed).at(v);
      if (!t) return std::nullopt;
      return first.curve(moving).solve(*t);
    };
    auto second_gap = [&](double v, double r) {
      auto [dm, df] = place(v, r);
      return gap(second, dm, df);
    };
    auto both_hold = [&](double v, double r) {
      auto [dm, df] = place(v, r);
      auto g1 = gap(first, dm, df);
      auto g2 = gap(second, dm, df);
      return g1 && g2 && std::fabs(*g1) <= opt.epsilon && std::fabs(*g2) <= opt.epsilon;
    };

    std::vector<std::optional<double>> root(k);
    std::vector<std::optional<double>> h(k);
    for (unsigned i = 0; i < k; ++i) {
      const double v = static_cast<double>(i) / (k - 1);
      std::vector<double> roots;
      if (auto t = first.curve(fixed).at(v)) roots = roots_on_line(first.curve(moving), *t, opt);
      for (double r : roots) {
        auto [dm, df] = place(v, r);
        boundary.add(dm, df);
      }
      if (roots.size() == 1) {
        root[i] = roots.front();
        h[i] = second_gap(v, roots.front());
        if (both_hold(v, roots.front())) {
          auto [dm, df] = place(v, roots.front());
          out.add(dm, df);
        }
      } else if (roots.size() > 1) {
        // The first rate is flat on this line; solve the second directly.
        auto t2 = second.curve(fixed).at(v);
        std::vector<double> cand = roots;
        if (t2) {
          auto more = roots_on_line(second.curve(moving), *t2, opt);
          cand.insert(cand.end(), more.begin(), more.end());
        }
        for (double r : cand) {
          if (both_hold(v, r)) {
            auto [dm, df] = place(v, r);
            out.add(dm, df);
          }
        }
      }

      // Exact route on the grid line.
      const Rational vq = grid_value(i, k);
      auto sol = first.curve(moving).solve(first.curve(fixed).at(vq));
      auto exact_place = [&](const Rational& r) {
        return fixed == Gender::kMale ? std::pair{vq, r} : std::pair{r, vq};
      };
      if (sol.kind == MobiusRate::Solutions::kOne) {
        auto [dm, df] = exact_place(sol.root);
        if (exact_match(second, dm, df)) out.add_exact(dm, df);
      } else if (sol.kind == MobiusRate::Solutions::kAll) {
        for (unsigned j = 0; j < k; ++j) {
          auto [dm, df] = exact_place(grid_value(j, k));
          if (exact_match(second, dm, df)) out.add_exact(dm, df);
        }
      }
    }

    for (unsigned i = 0; i + 1 < k; ++i) {
      if (!h[i] || !h[i + 1]) continue;
      if (std::fabs(*h[i]) <= opt.epsilon || std::fabs(*h[i + 1]) <= opt.epsilon) continue;
      if ((*h[i] < 0) == (*h[i + 1] < 0)) continue;
      double lo = static_cast<double>(i) / (k - 1);
      double hi = static_cast<double>(i + 1) / (k - 1);
      double hlo = *h[i];
      bool ok = true;
      for (int it = 0; it < opt.bisection_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        auto r = on_curve(mid);
        if (!r) {
          ok = false;
          break;
        }
        auto hm = second_gap(mid, *r);
        if (!hm) {
          ok = false;
          break;
        }
        if ((*hm < 0) == (hlo < 0)) {
          lo = mid;
          hlo = *hm;
        } else {
          hi = mid;
        }
      }
      if (!ok) continue;
      const double v = 0.5 * (lo + hi);
      if (auto r = on_curve(v); r && both_hold(v, *r)) {
        auto [dm, df] = place(v, *r);
        out.add(dm, df);
      }
    }
  }
}

std::string point_text(const FeasiblePoint& p) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << p.d_m << ", " << p.d_f << ")";
  return os.str();
}

bool on_diagonal(const FeasibilityResult& r, unsigned k, std::string& detail) {
  for (const auto& p : r.points) {
    if (std::fabs(p.d_m - p.d_f) > kFloatTolerance) {
      detail = "off-diagonal point " + point_text(p);
      return false;
    }
  }
  for (unsigned i = 0; i < k; ++i) {
    const double v = static_cast<double>(i) / (k - 1);
    const bool found = std::any_of(r.points.begin(), r.points.end(), [&](const auto& p) {
      return std::fabs(p.d_m - v) < kMergeDistance && std::fabs(p.d_f - v) < kMergeDistance;
    });
    if (!found) {
      detail = "diagonal grid point " + std::to_string(i) + " is not feasible";
      return false;
    }
  }
  detail = std::to_string(r.points.size()) + " points, all on the diagonal";
  return true;
}

void add_findings(const PhelpsianScenario& s, const FeasibilityOptions& opt, FeasibilityResult& r) {
  const auto non_corner = r.non_corner_points();
  auto finding = [&](std::string claim, bool holds, std::string detail) {
    r.findings.push_back(Finding{std::move(claim), holds, std::move(detail)});
  };
  auto first_point = [](const std::vector<FeasiblePoint>& pts) {
    return pts.empty() ? std::string("none") : point_text(pts.front());
  };
  auto has_point = [&](double dm, double df) {
    return std::any_of(r.points.begin(), r.points.end(), [&](const auto& p) {
      return std::fabs(p.d_m - dm) < kMergeDistance && std::fabs(p.d_f - df) < kMergeDistance;
    });
  };

  switch (r.goal) {
    case Criterion::kAntiClassification:
    case Criterion::kCondDemographicParity: {
      std::string detail;
      const bool ok = on_diagonal(r, opt.grid, detail);
      finding("feasible set is the diagonal d_m = d_f", ok, detail);
      return;
    }
    default: break;
  }

  if (s.variant == Variant::kPrevalence) {
    switch (r.goal) {
      case Criterion::kErrorRateBalance:
      case Criterion::kPosErrorBalance:
      case Criterion::kNegErrorBalance: {
        std::string detail;
        const bool ok = on_diagonal(r, opt.grid, detail);
        finding("error balance holds exactly on the diagonal d_m = d_f (anti-classification)", ok, detail);
        break;
      }
      case Criterion::kPosPredParity:
      case Criterion::kNegPredParity: {
        if (s.p_m == s.p_f) {
          std::string detail;
          finding("equal prevalences: parity holds exactly on the diagonal", on_diagonal(r, opt.grid, detail), detail);
          break;
        }
        const bool female_higher = s.p_f > s.p_m;
        const FeasiblePoint* bad = nullptr;
        for (const auto& p : non_corner) {
          const double lead = female_higher ? p.d_f - p.d_m : p.d_m - p.d_f;
          if (!(lead > opt.epsilon)) {
            bad = &p;
            break;
          }
        }
        finding(std::string("every non-corner solution hires the higher-prevalence group (") +
                    (female_higher ? "f" : "m") + ") more often at x = 2",
                bad == nullptr,
                bad ? "violated at " + point_text(*bad) : std::to_string(non_corner.size()) + " non-corner points");
        if (r.goal == Criterion::kPosPredParity) {
          finding("corner (0, 0) is feasible", has_point(0.0, 0.0), "");
        } else {
          finding("corner (1, 1) is feasible", has_point(1.0, 1.0), "");
        }
        break;
      }
      case Criterion::kPredictiveParity:
        finding("predictive parity infeasible off degenerate corners", non_corner.empty(),
                non_corner.empty() ? "" : std::to_string(non_corner.size()) + " non-corner points, first " +
                                              first_point(non_corner));
        break;
      default: break;
    }
  } else {
    switch (r.goal) {
      case Criterion::kErrorRateBalance:
        if (s.phi_m != s.phi_f) {
          finding("error rate balance infeasible when phi_m != phi_f", r.points.empty(),
                  r.points.empty() ? "" : "found " + first_point(r.points));
        }
        break;
      case Criterion::kPosPredParity:
        finding("positive predictive parity only at d_m = d_f = 0", r.only_origin(),
                r.only_origin() ? "" : std::to_string(r.points.size()) + " points, first non-origin " +
                                           first_point(non_corner.empty() ? r.points : non_corner));
        break;
      case Criterion::kPredictiveParity:
        finding("predictive parity infeasible", r.points.empty(),
                r.points.empty() ? "" : "found " + first_point(r.points));
        break;
      default: break;
    }
  }
}

}  // namespace

std::vector<FeasiblePoint> FeasibilityResult::non_corner_points() const {
  std::vector<FeasiblePoint> out;
  for (const auto& p : points) {
    if (!p.corner) out.push_back(p);
  }
  return out;
}

bool FeasibilityResult::only_origin() const {
  return points.size() == 1 && std::fabs(points.front().d_m) <= kCornerSlack &&
         std::fabs(points.front().d_f) <= kCornerSlack;
}

FeasibilityResult feasibility_search(const PhelpsianScenario& s, Criterion goal, const FeasibilityOptions& options) {
  s.validate();
  if (options.grid < 2) throw DomainError("grid", "need at least 2 points per axis");
  FeasibilityResult r;
  r.goal = goal;
  r.variant = s.variant;
  r.degenerate = s.degenerate();

  auto equation = [&](Criterion c) {
    return Equation{rate_curve(s, Gender::kMale, c), rate_curve(s, Gender::kFemale, c)};
  };

  PointSet points;
  PointSet boundary;
  std::vector<Equation> eqs;
  switch (goal) {
    case Criterion::kAntiClassification:
    case Criterion::kCondDemographicParity:
      for (unsigned i = 0; i < options.grid; ++i) points.add_exact(grid_value(i, options.grid), grid_value(i, options.grid));
      break;
    case Criterion::kPredictiveParity:
      eqs = {equation(Criterion::kPosPredParity), equation(Criterion::kNegPredParity)};
      two_rates(eqs[0], eqs[1], options, points, boundary);
      break;
    case Criterion::kErrorRateBalance:
      eqs = {equation(Criterion::kPosErrorBalance), equation(Criterion::kNegErrorBalance)};
      two_rates(eqs[0], eqs[1], options, points, boundary);
      break;
    default:
      eqs = {equation(goal)};
      single_rate(eqs[0], options, points);
      break;
  }
  std::vector<const Equation*> eq_ptrs;
  for (const auto& e : eqs) eq_ptrs.push_back(&e);
  r.points = points.take(eq_ptrs);
  std::vector<const Equation*> first_only;
  if (!eq_ptrs.empty()) first_only.push_back(eq_ptrs.front());
  r.boundary = boundary.take(first_only);
  if (r.points.empty()) {
    r.shape = FeasibleShape::kEmpty;
  } else if (r.points.size() <= 4) {
    r.shape = FeasibleShape::kIsolated;
  } else {
    r.shape = FeasibleShape::kCurve;
  }
  add_findings(s, options, r);
  return r;
}

}  // namespace paritylens::sd
