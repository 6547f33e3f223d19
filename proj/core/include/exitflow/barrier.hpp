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

#ifndef EXITFLOW_BARRIER_HPP_
#define EXITFLOW_BARRIER_HPP_

#include <span>
#include <vector>

#include "exitflow/cadlag_path.hpp"

namespace exitflow {

using Point = std::vector<double>;

// A finite sample of a forbidden region in space-time.
struct SpaceTimeSet {
  std::vector<double> times;   // t_k
  std::vector<Point> points;   // z_k, all of one dimension

  int dimension() const;
  void validate() const;
};

// Closed-form moving-boundary function g(t).
struct BoundaryCurve {
  enum class Family { kConstant, kLinear, kSqrt };

  Family family = Family::kConstant;
  double a = 0.0;  // g(t) = a                    (constant)
  double b = 0.0;  //        a + b t              (linear)
                   //        a + b sqrt(t)        (sqrt)

  double operator()(double t) const;
  double derivative(double t) const;
};

// Values sampled on a rectangular (t, z) lattice, evaluated by multilinear
// interpolation. Evaluation outside the lattice box is a domain error.
struct GridField {
  std::vector<double> t_axis;               // sorted, >= 2 entries
  std::vector<std::vector<double>> z_axes;  // one sorted axis per dimension
  std::vector<double> values;  // row-major over (t, z1, ..., zd)

  int dimension() const { return static_cast<int>(z_axes.size()); }
  void validate() const;
  double interpolate(double t, std::span<const double> z) const;
  bool inside(double t, std::span<const double> z) const;
};

// A continuous scalar field on space-time whose negative region is the
// moving domain: the domain at time t is {z : value < 0}. Four variants:
//
//   affine    dimension 1, value x - g(t) for a closed-form boundary g
//   grid      multilinear interpolation of sampled values
//   distance  minus the distance to a space-time point cloud (never positive;
//             zero exactly on the sample points; 1-Lipschitz)
//
// plus an additive level offset applying to any variant, so that
// shifted(u) evaluates to the original field minus u.
class BarrierField {
 public:
  enum class Kind { kAffine, kGrid, kDistance };

  static BarrierField affine(BoundaryCurve g);
  static BarrierField grid(GridField data);
  static BarrierField distance(SpaceTimeSet cloud);

  BarrierField shifted(double u) const;

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double offset() const { return offset_; }
  const BoundaryCurve& boundary() const;
  const GridField& grid_data() const;
  const SpaceTimeSet& cloud() const;

  bool in_domain(double t, std::span<const double> z) const;

  double value(double t, std::span<const double> z) const;
  double value(double t, double z) const;  // dimension-1 convenience

  // Spatial gradient: closed-form for the affine variant, central
  // differences with step `grad_step()` otherwise.
  std::vector<double> gradient(double t, std::span<const double> z) const;
  double grad_step() const;

 private:
  BarrierField() = default;

  Kind kind_ = Kind::kAffine;
  int dimension_ = 1;
  double offset_ = 0.0;
  BoundaryCurve boundary_;
  GridField grid_;
  SpaceTimeSet cloud_;
};

// The canonical barrier of a sampled forbidden set: minus the Euclidean
// space-time distance to the nearest sample point.
BarrierField canonical_barrier(SpaceTimeSet cloud);

// The scalar path t -> field(t, x(t)). Exact closed form where x is piecewise
// constant/linear against an affine barrier with constant or linear boundary;
// otherwise each piece of x is resolved into `resolution` linear chips with
// nodes evaluated exactly on the field. Jumps of x land at the same times.
CadlagPath scalarize(const CadlagPath& x, const BarrierField& field,
                     int resolution = 64);
CadlagPath scalarize(const VectorPath& x, const BarrierField& field,
                     int resolution = 64);

// Max of |a - b| over [0, T] x [-R, R]^d, scanned on a regular lattice with
// `grid_cells` cells per axis. Exact (endpoint evaluation, no scan) for two
// affine fields sharing a boundary family, where the difference depends on t
// alone and is monotone between endpoints.
double local_uniform_distance(const BarrierField& a, const BarrierField& b,
                              double horizon, double radius, int grid_cells);

}  // namespace exitflow

#endif  // EXITFLOW_BARRIER_HPP_
