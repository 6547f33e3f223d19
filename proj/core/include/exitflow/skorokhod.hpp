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

#ifndef EXITFLOW_SKOROKHOD_HPP_
#define EXITFLOW_SKOROKHOD_HPP_

#include <utility>
#include <vector>

#include "exitflow/cadlag_path.hpp"
#include "exitflow/time_change.hpp"

namespace exitflow {

// A nondecreasing piecewise path on an interval [a, b] (stored as a path on
// [0, b-a] plus the left endpoint). Monotonicity is checked on construction;
// all values must be finite, so profiles with infinite stretches are
// compactified before they land here.
class MonotonePath {
 public:
  MonotonePath(double domain_lo, CadlagPath path);

  double lo() const { return a_; }
  double hi() const { return a_ + path_.horizon(); }
  double value(double u) const { return path_.value_at(u - a_); }
  double left_limit(double u) const { return path_.left_limit(u - a_); }
  double start_value() const { return path_.value_at(0.0); }
  double end_value() const { return path_.terminal(); }
  const CadlagPath& path() const { return path_; }

 private:
  double a_;
  CadlagPath path_;
};

// The strictly increasing clock (t - a) + (g(t) - g(a)) of a monotone path,
// with its total length (b - a) + (g(b) - g(a)).
struct ThetaResult {
  MonotonePath theta;
  double length = 0.0;
};
ThetaResult theta(const MonotonePath& g);

// The canonical trace of the completed graph of a monotone path: a pair of
// continuous nondecreasing piecewise-linear maps l -> (r(l), u(l)) on
// [0, length] with r the generalized inverse of the clock and u the
// complementary coordinate, plus their rescaling to [0, 1]. Every knot pair
// lies on the completed graph; r is 1-Lipschitz in l.
class ParametricRep {
 public:
  ParametricRep(std::vector<double> knots_l, std::vector<double> r,
                std::vector<double> u, double domain_lo, double domain_hi);

  double length() const { return knots_l_.back(); }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  std::size_t knot_count() const { return knots_l_.size(); }
  double knot_l(std::size_t i) const { return knots_l_[i]; }
  double knot_r(std::size_t i) const { return r_[i]; }
  double knot_u(std::size_t i) const { return u_[i]; }

  // Unscaled coordinates at arc length l in [0, length].
  double r_at(double l) const;
  double u_at(double l) const;

  // Coordinates rescaled to s in [0, 1].
  double r_hat(double s) const { return r_at(s * length()); }
  double u_hat(double s) const { return u_at(s * length()); }

 private:
  std::vector<double> knots_l_, r_, u_;
  double lo_, hi_;
};

ParametricRep canonical_rep(const MonotonePath& g);

// sup-norm gap of the rescaled canonical traces: max over the merged knots
// of |r_f - r_g| and |u_f - u_g| on [0, 1]. An upper bound on the M1
// distance, zero exactly when the completed graphs coincide. The paths must
// share the interval [a, b].
double m1_upper_bound(const MonotonePath& f, const MonotonePath& g);

// The J1 cost of one candidate time change: the larger of its distortion and
// the uniform distance between f after the change and g.
double j1_discrepancy(const CadlagPath& f, const CadlagPath& g,
                      const TimeChange& lambda);

struct J1SearchResult {
  double bound = 0.0;
  std::vector<std::pair<double, double>> lambda_knots;
};

// Deterministic coordinate-descent search over piecewise-linear time changes
// with `knots` movable knots (seeded at the jump times of g, padded
// uniformly), `iters` sweeps. Returns the best discrepancy found: an upper
// bound on the J1 distance.
J1SearchResult j1_upper_bound(const CadlagPath& f, const CadlagPath& g,
                              int knots = 8, int iters = 3);

// A certified lower bound on the J1 distance of two pure step paths, by
// bisection over a necessary-conditions test: below the true distance there
// must exist an order-preserving matching of every jump bigger than twice
// the margin onto a nearby jump of the other path with close pre/post
// values, and the values themselves must be approachable within the margin
// through a window of matching width. Returns the largest margin at which
// the conditions are violated, within `bisection_tol`.
double j1_lower_bound_step(const CadlagPath& f, const CadlagPath& g,
                           double bisection_tol = 1e-4);

}  // namespace exitflow

#endif  // EXITFLOW_SKOROKHOD_HPP_
