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

#include "exitflow/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace exitflow {

namespace {

constexpr double kGradStep = 1e-5;

double axis_weight(const std::vector<double>& axis, double x,
                   std::size_t* cell) {
  // Index of the cell [axis[i], axis[i+1]] containing x, plus the barycentric
  // weight of the right node.
  const auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t j = static_cast<std::size_t>(it - axis.begin());
  if (j == 0) j = 1;
  if (j == axis.size()) j = axis.size() - 1;
  *cell = j - 1;
  return (x - axis[j - 1]) / (axis[j] - axis[j - 1]);
}

}  // namespace

int SpaceTimeSet::dimension() const {
  return points.empty() ? 0 : static_cast<int>(points.front().size());
}

void SpaceTimeSet::validate() const {
  if (times.empty() || times.size() != points.size())
    throw std::invalid_argument("SpaceTimeSet: empty or ragged sample");
  const std::size_t d = points.front().size();
  if (d == 0) throw std::invalid_argument("SpaceTimeSet: zero dimension");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (std::isnan(times[k]) || times[k] < 0.0)
      throw std::invalid_argument("SpaceTimeSet: bad sample time");
    if (points[k].size() != d)
      throw std::invalid_argument("SpaceTimeSet: mixed dimensions");
  }
}

double BoundaryCurve::operator()(double t) const {
  switch (family) {
    case Family::kConstant:
      return a;
    case Family::kLinear:
      return a + b * t;
    case Family::kSqrt:
      if (t < 0.0) throw std::domain_error("BoundaryCurve: sqrt of t < 0");
      return a + b * std::sqrt(t);
  }
  return a;
}

double BoundaryCurve::derivative(double t) const {
  switch (family) {
    case Family::kConstant:
      return 0.0;
    case Family::kLinear:
      return b;
    case Family::kSqrt:
      if (t <= 0.0) throw std::domain_error("BoundaryCurve: d/dt sqrt at 0");
      return 0.5 * b / std::sqrt(t);
  }
  return 0.0;
}

void GridField::validate() const {
  auto check_axis = [](const std::vector<double>& axis) {
    if (axis.size() < 2)
      throw std::invalid_argument("GridField: axis needs >= 2 nodes");
    for (std::size_t i = 1; i < axis.size(); ++i)
      if (!(axis[i] > axis[i - 1]))
        throw std::invalid_argument("GridField: axis not increasing");
  };
  check_axis(t_axis);
  if (z_axes.empty() || z_axes.size() > 2)
    throw std::invalid_argument("GridField: dimension must be 1 or 2");
  std::size_t expected = t_axis.size();
  for (const auto& axis : z_axes) {
    check_axis(axis);
    expected *= axis.size();
  }
  if (values.size() != expected)
    throw std::invalid_argument("GridField: value count does not match axes");
  for (double v : values)
    if (std::isnan(v)) throw std::invalid_argument("GridField: NaN value");
}

bool GridField::inside(double t, std::span<const double> z) const {
  if (t < t_axis.front() || t > t_axis.back()) return false;
  for (std::size_t k = 0; k < z_axes.size(); ++k)
    if (z[k] < z_axes[k].front() || z[k] > z_axes[k].back()) return false;
  return true;
}

double GridField::interpolate(double t, std::span<const double> z) const {
  if (z.size() != z_axes.size())
    throw std::invalid_argument("GridField: point dimension mismatch");
  if (!inside(t, z))
    throw std::domain_error("GridField: point outside the sampled box");

  std::size_t cells[3];
  double weights[3];
  weights[0] = axis_weight(t_axis, t, &cells[0]);
  for (std::size_t k = 0; k < z_axes.size(); ++k)
    weights[k + 1] = axis_weight(z_axes[k], z[k], &cells[k + 1]);

  const std::size_t axes = 1 + z_axes.size();
  std::size_t strides[3];
  strides[axes - 1] = 1;
  for (std::size_t k = axes - 1; k > 0; --k)
    strides[k - 1] = strides[k] * z_axes[k - 1].size();

  double acc = 0.0;
  for (std::size_t corner = 0; corner < (1u << axes); ++corner) {
    double w = 1.0;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < axes; ++k) {
      const bool hi = (corner >> k) & 1u;
      w *= hi ? weights[k] : 1.0 - weights[k];
      idx += (cells[k] + (hi ? 1 : 0)) * strides[k];
    }
    acc += w * values[idx];
  }
  return acc;
}

BarrierField BarrierField::affine(BoundaryCurve g) {
  BarrierField f;
  f.kind_ = Kind::kAffine;
  f.dimension_ = 1;
  f.boundary_ = g;
  return f;
}

BarrierField BarrierField::grid(GridField data) {
  data.validate();
  BarrierField f;
  f.kind_ = Kind::kGrid;
  f.dimension_ = data.dimension();
  f.grid_ = std::move(data);
  return f;
}

BarrierField BarrierField::distance(SpaceTimeSet cloud) {
  cloud.validate();
  BarrierField f;
  f.kind_ = Kind::kDistance;
  f.dimension_ = cloud.dimension();
  f.cloud_ = std::move(cloud);
  return f;
}

BarrierField BarrierField::shifted(double u) const {
  BarrierField f = *this;
  f.offset_ -= u;
  return f;
}

const BoundaryCurve& BarrierField::boundary() const {
  if (kind_ != Kind::kAffine)
    throw std::logic_error("BarrierField: not an affine field");
  return boundary_;
}

const GridField& BarrierField::grid_data() const {
  if (kind_ != Kind::kGrid)
    throw std::logic_error("BarrierField: not a grid field");
  return grid_;
}

const SpaceTimeSet& BarrierField::cloud() const {
  if (kind_ != Kind::kDistance)
    throw std::logic_error("BarrierField: not a distance field");
  return cloud_;
}

bool BarrierField::in_domain(double t, std::span<const double> z) const {
  if (t < 0.0) return false;
  if (static_cast<int>(z.size()) != dimension_) return false;
  if (kind_ == Kind::kGrid) return grid_.inside(t, z);
  return true;
}

double BarrierField::value(double t, std::span<const double> z) const {
  if (static_cast<int>(z.size()) != dimension_)
    throw std::invalid_argument("BarrierField: point dimension mismatch");
  switch (kind_) {
    case Kind::kAffine:
      return z[0] - boundary_(t) + offset_;
    case Kind::kGrid:
      return grid_.interpolate(t, z) + offset_;
    case Kind::kDistance: {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cloud_.times.size(); ++k) {
        double sq = (t - cloud_.times[k]) * (t - cloud_.times[k]);
        for (std::size_t j = 0; j < cloud_.points[k].size(); ++j) {
          const double dz = z[j] - cloud_.points[k][j];
          sq += dz * dz;
        }
        best = std::min(best, sq);
      }
      return -std::sqrt(best) + offset_;
    }
  }
  return offset_;
}

double BarrierField::value(double t, double z) const {
  return value(t, std::span<const double>(&z, 1));
}

std::vector<double> BarrierField::gradient(double t,
                                           std::span<const double> z) const {
  std::vector<double> g(dimension_);
  if (kind_ == Kind::kAffine) {
    g[0] = 1.0;
    return g;
  }
  std::vector<double> p(z.begin(), z.end());
  for (int k = 0; k < dimension_; ++k) {
    const double zk = p[k];
    p[k] = zk + kGradStep;
    const double up = value(t, p);
    p[k] = zk - kGradStep;
    const double dn = value(t, p);
    p[k] = zk;
    g[k] = (up - dn) / (2.0 * kGradStep);
  }
  return g;
}

double BarrierField::grad_step() const {
  return kind_ == Kind::kAffine ? 0.0 : kGradStep;
}

BarrierField canonical_barrier(SpaceTimeSet cloud) {
  return BarrierField::distance(std::move(cloud));
}

namespace {

// Composition on one source piece over [t0, t1), resolved into `resolution`
// linear chips whose node values sit exactly on the field.
void append_sampled(const BarrierField& field, const PathSegment& seg,
                    double t0, double t1, int resolution,
                    std::vector<PathSegment>* out) {
  const double dt = (t1 - t0) / resolution;
  double left_t = t0;
  double left_v = field.value(t0, std::span<const double>(&seg.value, 1));
  for (int j = 1; j <= resolution; ++j) {
    const double right_t = (j == resolution) ? t1 : t0 + j * dt;
    // The right node carries the left limit of x into right_t, so jumps of x
    // stay at piece boundaries.
    const double x_right = (seg.kind == SegmentKind::kConstant)
                               ? seg.value
                               : seg.value + seg.slope * (right_t - seg.start);
    const double right_v =
        field.value(right_t, std::span<const double>(&x_right, 1));
    out->push_back({left_t, SegmentKind::kLinear, left_v,
                    (right_v - left_v) / (right_t - left_t)});
    left_t = right_t;
    left_v = right_v;
  }
}

void append_sampled_vec(const BarrierField& field, const VectorPath& x,
                        double t0, double t1, int resolution,
                        std::vector<PathSegment>* out) {
  // Right nodes take left limits of x, which match the values at interior
  // nodes (x is continuous inside a merged piece) and keep jumps of x at
  // piece boundaries.
  auto left_limits = [&x](double t) {
    std::vector<double> v(x.dimension());
    for (int k = 0; k < x.dimension(); ++k) v[k] = x.component(k).left_limit(t);
    return v;
  };
  const double dt = (t1 - t0) / resolution;
  double left_t = t0;
  double left_v = field.value(t0, x.value_at(t0));
  for (int j = 1; j <= resolution; ++j) {
    const double right_t = (j == resolution) ? t1 : t0 + j * dt;
    const double right_v = field.value(right_t, left_limits(right_t));
    out->push_back({left_t, SegmentKind::kLinear, left_v,
                    (right_v - left_v) / (right_t - left_t)});
    left_t = right_t;
    left_v = right_v;
  }
}

}  // namespace

CadlagPath scalarize(const CadlagPath& x, const BarrierField& field,
                     int resolution) {
  if (field.dimension() != 1)
    throw std::invalid_argument("scalarize: field dimension mismatch");
  if (resolution < 1) throw std::invalid_argument("scalarize: resolution < 1");

  const bool closed_form =
      field.kind() == BarrierField::Kind::kAffine &&
      field.boundary().family != BoundaryCurve::Family::kSqrt;

  std::vector<PathSegment> out;
  const auto& segs = x.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double t0 = segs[i].start;
    const double t1 = (i + 1 < segs.size()) ? segs[i + 1].start : x.horizon();
    if (closed_form) {
      // y(t) = x(t) - (a + b t) + offset: still one linear piece.
      const BoundaryCurve& g = field.boundary();
      const double b = g.family == BoundaryCurve::Family::kLinear ? g.b : 0.0;
      PathSegment seg;
      seg.start = t0;
      seg.value = segs[i].value - g(t0) + field.offset();
      const double slope =
          (segs[i].kind == SegmentKind::kLinear ? segs[i].slope : 0.0) - b;
      seg.kind = slope == 0.0 ? SegmentKind::kConstant : SegmentKind::kLinear;
      seg.slope = slope;
      out.push_back(seg);
    } else {
      if (!field.in_domain(t0, std::span<const double>(&segs[i].value, 1)))
        throw std::domain_error("scalarize: path leaves the field's domain");
      append_sampled(field, segs[i], t0, t1, resolution, &out);
    }
  }
  const double xT = x.value_at(x.horizon());
  const double terminal =
      field.value(x.horizon(), std::span<const double>(&xT, 1));
  return CadlagPath(std::move(out), terminal, x.horizon());
}

CadlagPath scalarize(const VectorPath& x, const BarrierField& field,
                     int resolution) {
  if (x.dimension() == 1 && field.dimension() == 1)
    return scalarize(x.component(0), field, resolution);
  if (field.dimension() != x.dimension())
    throw std::invalid_argument("scalarize: field dimension mismatch");
  if (resolution < 1) throw std::invalid_argument("scalarize: resolution < 1");

  // Merge the component breakpoints so every piece is jointly linear.
  std::vector<double> cuts;
  for (const CadlagPath& c : x.components())
    for (const PathSegment& s : c.segments()) cuts.push_back(s.start);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(x.horizon());

  std::vector<PathSegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    append_sampled_vec(field, x, cuts[i], cuts[i + 1], resolution, &out);
  const double terminal = field.value(x.horizon(), x.value_at(x.horizon()));
  return CadlagPath(std::move(out), terminal, x.horizon());
}

double local_uniform_distance(const BarrierField& a, const BarrierField& b,
                              double horizon, double radius, int grid_cells) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("local_uniform_distance: dimension mismatch");
  if (!(horizon > 0.0) || !(radius > 0.0) || grid_cells < 1)
    throw std::invalid_argument("local_uniform_distance: bad window");

  if (a.kind() == BarrierField::Kind::kAffine &&
      b.kind() == BarrierField::Kind::kAffine &&
      a.boundary().family == b.boundary().family) {
    // The difference depends on t alone and is monotone between endpoints
    // for every boundary family; differencing the coefficients keeps shifted
    // copies of one field exact.
    const double base = (a.offset() - b.offset()) +
                        (b.boundary().a - a.boundary().a);
    const double ramp = b.boundary().b - a.boundary().b;
    double end = base;
    switch (a.boundary().family) {
      case BoundaryCurve::Family::kConstant:
        break;
      case BoundaryCurve::Family::kLinear:
        end += ramp * horizon;
        break;
      case BoundaryCurve::Family::kSqrt:
        end += ramp * std::sqrt(horizon);
        break;
    }
    return std::max(std::abs(base), std::abs(end));
  }

  const int d = a.dimension();
  double best = 0.0;
  std::vector<double> z(d);
  const auto scan = [&](auto&& self, int axis) -> void {
    if (axis == d) {
      for (int i = 0; i <= grid_cells; ++i) {
        const double t = horizon * i / grid_cells;
        if (!a.in_domain(t, z) || !b.in_domain(t, z))
          throw std::domain_error(
              "local_uniform_distance: window leaves a field's domain");
        best = std::max(best, std::abs(a.value(t, z) - b.value(t, z)));
      }
      return;
    }
    for (int i = 0; i <= grid_cells; ++i) {
      z[axis] = -radius + 2.0 * radius * i / grid_cells;
      self(self, axis + 1);
    }
  };
  scan(scan, 0);
  return best;
}

}  // namespace exitflow
