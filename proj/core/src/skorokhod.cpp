// Copyright 2026 The exitflow authors.
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

#include "exitflow/skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace exitflow {

MonotonePath::MonotonePath(double domain_lo, CadlagPath path)
    : a_(domain_lo), path_(std::move(path)) {
  if (std::isnan(a_) || !std::isfinite(a_))
    throw std::invalid_argument("MonotonePath: bad left endpoint");
  // Rounding-sized junction dips are tolerated: compactified profiles of
  // irrational-valued paths assemble their chips from divided differences.
  if (!path_.is_nondecreasing(1e-12))
    throw std::invalid_argument("MonotonePath: path is not nondecreasing");
}

ThetaResult theta(const MonotonePath& g) {
  const CadlagPath& p = g.path();
  std::vector<PathSegment> segs;
  segs.reserve(p.segments().size());
  const double g_a = p.value_at(0.0);
  for (const PathSegment& s : p.segments()) {
    PathSegment t;
    t.start = s.start;
    t.kind = SegmentKind::kLinear;  // the (t - a) ramp keeps every piece rising
    t.value = s.start + (s.value - g_a);
    t.slope = 1.0 + (s.kind == SegmentKind::kLinear ? s.slope : 0.0);
    segs.push_back(t);
  }
  const double length = p.horizon() + (p.terminal() - g_a);
  CadlagPath theta_path(std::move(segs), length, p.horizon());
  return {MonotonePath(g.lo(), std::move(theta_path)), length};
}

ParametricRep::ParametricRep(std::vector<double> knots_l,
                             std::vector<double> r, std::vector<double> u,
                             double domain_lo, double domain_hi)
    : knots_l_(std::move(knots_l)),
      r_(std::move(r)),
      u_(std::move(u)),
      lo_(domain_lo),
      hi_(domain_hi) {
  if (knots_l_.size() < 2 || knots_l_.size() != r_.size() ||
      knots_l_.size() != u_.size())
    throw std::invalid_argument("ParametricRep: ragged knot arrays");
  if (knots_l_.front() != 0.0)
    throw std::invalid_argument("ParametricRep: arc length must start at 0");
  for (std::size_t i = 1; i < knots_l_.size(); ++i)
    if (!(knots_l_[i] > knots_l_[i - 1]))
      throw std::invalid_argument("ParametricRep: knots must increase");
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + w * (ys[j] - ys[j - 1]);
}

}  // namespace

double ParametricRep::r_at(double l) const { return interp(knots_l_, r_, l); }
double ParametricRep::u_at(double l) const { return interp(knots_l_, u_, l); }

ParametricRep canonical_rep(const MonotonePath& g) {
  const ThetaResult th = theta(g);
  const CadlagPath& tp = th.theta.path();
  const double a = g.lo();
  const double g_a = g.start_value();

  // Knots at the images of the clock's piece boundaries; the inverse and the
  // complementary coordinate are linear in between. A gap in the clock's
  // range (a jump of g) pins r at the jump time while u sweeps the vertical
  // graph segment.
  std::vector<double> ls, rs, us;
  auto push = [&](double l, double t) {
    const double u = g_a + (l - t);  // t is already relative to a
    if (!ls.empty() && l <= ls.back()) return;  // absorbs rounding dips
    ls.push_back(l);
    rs.push_back(a + t);
    us.push_back(u);
  };

  push(0.0, 0.0);
  const auto& segs = tp.segments();
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const double t = segs[i].start;
    push(tp.left_limit(t), t);
    push(tp.value_at(t), t);
  }
  const double end = tp.horizon();
  push(tp.left_limit(end), end);
  push(tp.terminal(), end);  // terminal jump of g, when present

  return ParametricRep(std::move(ls), std::move(rs), std::move(us), g.lo(),
                       g.hi());
}

double m1_upper_bound(const MonotonePath& f, const MonotonePath& g) {
  if (f.lo() != g.lo() || f.hi() != g.hi())
    throw std::invalid_argument("m1_upper_bound: interval mismatch");
  const ParametricRep rf = canonical_rep(f);
  const ParametricRep rg = canonical_rep(g);

  // Merge the scaled knots; both traces are piecewise linear in s, so the
  // sup norms are attained on the merged set.
  std::vector<double> ss;
  ss.reserve(rf.knot_count() + rg.knot_count());
  for (std::size_t i = 0; i < rf.knot_count(); ++i)
    ss.push_back(rf.knot_l(i) / rf.length());
  for (std::size_t i = 0; i < rg.knot_count(); ++i)
    ss.push_back(rg.knot_l(i) / rg.length());
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());

  double dr = 0.0, du = 0.0;
  for (double s : ss) {
    dr = std::max(dr, std::abs(rf.r_hat(s) - rg.r_hat(s)));
    du = std::max(du, std::abs(rf.u_hat(s) - rg.u_hat(s)));
  }
  return std::max(dr, du);
}

double j1_discrepancy(const CadlagPath& f, const CadlagPath& g,
                      const TimeChange& lambda) {
  if (f.horizon() != g.horizon() || lambda.horizon() != f.horizon())
    throw std::invalid_argument("j1_discrepancy: horizon mismatch");
  return std::max(lambda.distortion(),
                  uniform_distance(f.time_changed(lambda), g));
}

namespace {

double golden_minimize(const std::function<double(double)>& fn, double lo,
                       double hi, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

J1SearchResult j1_upper_bound(const CadlagPath& f, const CadlagPath& g,
                              int knots, int iters) {
  if (f.horizon() != g.horizon())
    throw std::invalid_argument("j1_upper_bound: horizon mismatch");
  if (knots < 1 || iters < 1)
    throw std::invalid_argument("j1_upper_bound: bad search budget");
  const double T = f.horizon();

  // Knot abscissae: jump times of g first (aligning its jumps is what a good
  // time change must do), padded with a uniform grid.
  std::vector<double> abscissae;
  for (const Jump& j : g.jumps())
    if (j.time > 0.0 && j.time < T) abscissae.push_back(j.time);
  std::sort(abscissae.begin(), abscissae.end());
  if (static_cast<int>(abscissae.size()) > knots) abscissae.resize(knots);
  for (int k = 1; static_cast<int>(abscissae.size()) < knots && k <= knots;
       ++k) {
    const double t = T * k / (knots + 1);
    if (std::find(abscissae.begin(), abscissae.end(), t) == abscissae.end())
      abscissae.push_back(t);
  }
  std::sort(abscissae.begin(), abscissae.end());
  abscissae.erase(std::unique(abscissae.begin(), abscissae.end()),
                  abscissae.end());

  // Candidate target values for a knot: jump times of f (exact alignment),
  // the identity position, and a uniform scan of the bracket.
  std::vector<double> f_jumps;
  for (const Jump& j : f.jumps())
    if (j.time > 0.0 && j.time < T) f_jumps.push_back(j.time);

  std::vector<double> values(abscissae.size());
  for (std::size_t i = 0; i < abscissae.size(); ++i) values[i] = abscissae[i];

  auto build = [&](const std::vector<double>& vals) {
    std::vector<std::pair<double, double>> ks;
    ks.reserve(vals.size() + 2);
    ks.emplace_back(0.0, 0.0);
    for (std::size_t i = 0; i < vals.size(); ++i)
      ks.emplace_back(abscissae[i], vals[i]);
    ks.emplace_back(T, T);
    return TimeChange(std::move(ks));
  };

  double best = j1_discrepancy(f, g, build(values));
  {
    const double ident = j1_discrepancy(f, g, TimeChange::identity(T));
    best = std::min(best, ident);
  }

  for (int pass = 0; pass < iters; ++pass) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double lo = (i == 0) ? 0.0 : values[i - 1];
      const double hi = (i + 1 == values.size()) ? T : values[i + 1];
      auto objective = [&](double v) {
        if (!(v > lo && v < hi)) return std::numeric_limits<double>::infinity();
        std::vector<double> trial = values;
        trial[i] = v;
        return j1_discrepancy(f, g, build(trial));
      };
      double arg = values[i];
      double val = objective(arg);
      if (!std::isfinite(val)) val = std::numeric_limits<double>::infinity();
      for (double cand : f_jumps) {
        if (cand <= lo || cand >= hi) continue;
        const double c = objective(cand);
        if (c < val) {
          val = c;
          arg = cand;
        }
      }
      constexpr int kScan = 64;
      for (int s = 1; s < kScan; ++s) {
        const double cand = lo + (hi - lo) * s / kScan;
        const double c = objective(cand);
        if (c < val) {
          val = c;
          arg = cand;
        }
      }
      const double span = (hi - lo) / kScan;
      const double ref_lo = std::max(lo + 1e-12, arg - span);
      const double ref_hi = std::min(hi - 1e-12, arg + span);
      if (ref_lo < ref_hi) {
        const double refined = golden_minimize(objective, ref_lo, ref_hi, 40);
        if (objective(refined) < val) arg = refined;
      }
      values[i] = arg;
    }
    best = std::min(best, j1_discrepancy(f, g, build(values)));
  }

  J1SearchResult result;
  const TimeChange lambda = build(values);
  result.bound = std::min(best, j1_discrepancy(f, g, lambda));
  result.lambda_knots.reserve(lambda.knot_times().size());
  for (std::size_t i = 0; i < lambda.knot_times().size(); ++i)
    result.lambda_knots.emplace_back(lambda.knot_times()[i],
                                     lambda.knot_values()[i]);
  return result;
}

namespace {

struct StepJump {
  double time;
  double pre;   // left limit
  double post;  // value
  double size() const { return post - pre; }
};

std::vector<StepJump> step_jumps(const CadlagPath& p) {
  std::vector<StepJump> out;
  for (const Jump& j : p.jumps())
    out.push_back({j.time, p.left_limit(j.time), p.value_at(j.time)});
  return out;
}

// All values the step path attains on [lo, hi] (closed, clipped to the
// horizon), as a min/max envelope; for step paths the envelope is exactly
// the attained set's hull, which is what the window test needs.
std::pair<double, double> value_hull(const CadlagPath& p, double lo,
                                     double hi) {
  lo = std::max(lo, 0.0);
  hi = std::min(hi, p.horizon());
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  const auto& segs = p.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double a = segs[i].start;
    const double b = (i + 1 < segs.size()) ? segs[i + 1].start : p.horizon();
    if (b <= lo || a > hi) continue;
    mn = std::min(mn, segs[i].value);
    mx = std::max(mx, segs[i].value);
  }
  if (hi == p.horizon()) {
    mn = std::min(mn, p.terminal());
    mx = std::max(mx, p.terminal());
  }
  return {mn, mx};
}

// Distance from x to the attained-value hull. Step paths can only attain
// finitely many values, but any value within the hull is within hull-width
// of an attained one; using the hull keeps the test a relaxation, which is
// what soundness of the lower bound requires.
double dist_to_hull(double x, std::pair<double, double> hull) {
  if (x < hull.first) return hull.first - x;
  if (x > hull.second) return x - hull.second;
  return 0.0;
}

// Order-preserving injective matching of every jump of `from` larger than
// 2*delta into the jump list of `to`, moving each by at most delta in time
// with pre/post values within delta. Greedy earliest-compatible is exact for
// this ordered matching problem.
bool big_jumps_match(const std::vector<StepJump>& from,
                     const std::vector<StepJump>& to, double delta) {
  std::size_t next = 0;
  for (const StepJump& j : from) {
    if (std::abs(j.size()) <= 2.0 * delta) continue;
    bool matched = false;
    while (next < to.size()) {
      const StepJump& c = to[next];
      if (c.time > j.time + delta) break;  // keep c for later jumps
      ++next;
      if (c.time < j.time - delta) continue;
      if (std::abs(c.pre - j.pre) <= delta &&
          std::abs(c.post - j.post) <= delta) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool j1_feasible(const CadlagPath& f, const CadlagPath& g,
                 const std::vector<StepJump>& jf,
                 const std::vector<StepJump>& jg,
                 const std::vector<double>& grid, double delta) {
  if (!big_jumps_match(jf, jg, delta)) return false;
  if (!big_jumps_match(jg, jf, delta)) return false;
  for (double t : grid) {
    if (dist_to_hull(g.value_at(t), value_hull(f, t - delta, t + delta)) >
        delta)
      return false;
    if (dist_to_hull(f.value_at(t), value_hull(g, t - delta, t + delta)) >
        delta)
      return false;
  }
  return true;
}

}  // namespace

double j1_lower_bound_step(const CadlagPath& f, const CadlagPath& g,
                           double bisection_tol) {
  if (f.horizon() != g.horizon())
    throw std::invalid_argument("j1_lower_bound_step: horizon mismatch");
  if (!f.is_step() || !g.is_step())
    throw std::invalid_argument("j1_lower_bound_step: inputs must be steps");
  if (!(bisection_tol > 0.0))
    throw std::invalid_argument("j1_lower_bound_step: bad tolerance");

  const std::vector<StepJump> jf = step_jumps(f);
  const std::vector<StepJump> jg = step_jumps(g);

  // Evaluation grid: breakpoints of both paths plus midpoints.
  std::vector<double> grid;
  for (const PathSegment& s : f.segments()) grid.push_back(s.start);
  for (const PathSegment& s : g.segments()) grid.push_back(s.start);
  grid.push_back(f.horizon());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const std::size_t base = grid.size();
  for (std::size_t i = 0; i + 1 < base; ++i)
    grid.push_back(0.5 * (grid[i] + grid[i + 1]));

  auto feasible = [&](double delta) {
    return j1_feasible(f, g, jf, jg, grid, delta);
  };

  if (feasible(0.0)) return 0.0;
  double lo = 0.0;  // infeasible
  double hi = std::max(f.horizon(), uniform_distance(f, g)) + 1.0;
  while (!feasible(hi)) hi *= 2.0;  // unconditionally true at giant margins
  while (hi - lo > bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

}  // namespace exitflow
