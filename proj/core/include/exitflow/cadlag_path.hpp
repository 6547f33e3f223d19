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

#ifndef EXITFLOW_CADLAG_PATH_HPP_
#define EXITFLOW_CADLAG_PATH_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace exitflow {

class TimeChange;

enum class SegmentKind { kConstant, kLinear };

// One piece of a path: on [start, next_start) the path equals
// value (+ slope * (t - start) for the linear kind).
struct PathSegment {
  double start = 0.0;
  SegmentKind kind = SegmentKind::kConstant;
  double value = 0.0;
  double slope = 0.0;  // always 0 for kConstant

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

struct Jump {
  double time = 0.0;
  double size = 0.0;

  friend bool operator==(const Jump&, const Jump&) = default;
};

// An exact right-continuous path with left limits on a finite horizon [0, T],
// stored as finitely many constant or linear pieces plus the value at T.
// Every evaluation, supremum and root below is computed in closed form from
// this structure; the representation is canonical (zero-slope linear pieces
// become constant, seamlessly continuing pieces are merged), so structural
// equality is meaningful.
//
// Immutable after construction; all operations are const and pure.
class CadlagPath {
 public:
  // Primary constructor. Segment starts must begin at 0, be strictly
  // increasing and stay below `horizon`; no value may be NaN.
  CadlagPath(std::vector<PathSegment> segments, double terminal,
             double horizon);

  static CadlagPath constant(double value, double horizon);
  static CadlagPath linear(double value_at_zero, double slope, double horizon);

  // Piecewise-constant path: values[i] on [times[i], times[i+1]) with
  // times[0] == 0. A final time equal to `horizon` assigns the value at the
  // horizon itself; otherwise the last value extends to the horizon.
  static CadlagPath step(const std::vector<double>& times,
                         const std::vector<double>& values, double horizon);

  // Continuous piecewise-linear interpolation through (t, v) nodes;
  // nodes.front().first must be 0 and nodes.back().first is the horizon.
  static CadlagPath piecewise_linear(
      const std::vector<std::pair<double, double>>& nodes);

  double horizon() const { return horizon_; }
  const std::vector<PathSegment>& segments() const { return segments_; }
  double terminal() const { return terminal_; }

  // Right-continuous evaluation; the segment-start value at breakpoints.
  double value_at(double t) const;

  // Limit from the left; at t == 0 this equals value_at(0).
  double left_limit(double t) const;

  // Exact supremum of attained values over the requested subinterval of
  // [0, horizon]. Returns -infinity for an empty interval (sup of nothing).
  // Right-open ends contribute their left limits: those are suprema of the
  // attained values even when not attained themselves.
  double sup_on(double lo, double hi, bool include_lo = true,
                bool include_hi = true) const;

  // All t with value_at(t) != left_limit(t), with signed sizes, sorted.
  std::vector<Jump> jumps() const;

  // The path t -> value_at(lambda(t)); lambda must be a time change of the
  // same horizon. Constant pieces stay constant and linear pieces stay
  // linear, with breakpoints at preimages of breakpoints and lambda's knots.
  CadlagPath time_changed(const TimeChange& lambda) const;

  // Restriction to [0, new_horizon]; the new terminal is value_at(new_horizon).
  CadlagPath restricted(double new_horizon) const;

  // The path plus a constant.
  CadlagPath shifted(double c) const;

  bool is_step() const;  // all pieces constant

  // Nonnegative slopes and jumps throughout. The tolerance forgives
  // junction dips of rounding size in paths assembled from irrational
  // arithmetic; structural checks pass 0.
  bool is_nondecreasing(double tol = 0.0) const;

  friend bool operator==(const CadlagPath&, const CadlagPath&) = default;

 private:
  CadlagPath() = default;

  // Index of the segment whose half-open interval contains t (t < horizon).
  std::size_t segment_index(double t) const;

  double horizon_ = 1.0;
  std::vector<PathSegment> segments_;
  double terminal_ = 0.0;
};

// Exact sup-norm distance over [0, T]: the difference of two piecewise-linear
// structures attains its extrema at merged breakpoints, their left limits and
// the terminal values. Horizons must agree.
double uniform_distance(const CadlagPath& f, const CadlagPath& g);

// A d-valued path assembled from scalar components on a common horizon.
class VectorPath {
 public:
  explicit VectorPath(std::vector<CadlagPath> components);

  int dimension() const { return static_cast<int>(components_.size()); }
  double horizon() const;
  const CadlagPath& component(int i) const { return components_.at(i); }
  const std::vector<CadlagPath>& components() const { return components_; }
  std::vector<double> value_at(double t) const;

 private:
  std::vector<CadlagPath> components_;
};

}  // namespace exitflow

#endif  // EXITFLOW_CADLAG_PATH_HPP_
