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

#include "exitflow/nt_verification.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "exitflow/first_passage.hpp"

namespace exitflow {

MatrixField MatrixField::constant(int rows, int cols,
                                  std::vector<double> base) {
  MatrixField f;
  f.rows = rows;
  f.cols = cols;
  f.base = std::move(base);
  return f;
}

void MatrixField::validate(int state_dim) const {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("MatrixField: bad shape");
  if (base.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument("MatrixField: base size mismatch");
  if (!x_coeffs.empty() &&
      x_coeffs.size() != static_cast<std::size_t>(state_dim))
    throw std::invalid_argument("MatrixField: one coefficient per coordinate");
  for (const auto& m : x_coeffs)
    if (m.size() != base.size())
      throw std::invalid_argument("MatrixField: coefficient size mismatch");
  for (double v : base)
    if (std::isnan(v)) throw std::invalid_argument("MatrixField: NaN");
}

std::vector<double> MatrixField::eval(std::span<const double> x,
                                      double t) const {
  (void)t;  // the closed-form families do not vary in time
  std::vector<double> m = base;
  for (std::size_t k = 0; k < x_coeffs.size(); ++k)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += x[k] * x_coeffs[k][i];
  return m;
}

void DiffusionSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("DiffusionSpec: bad dimension");
  drift.validate(dim);
  sigma.validate(dim);
  if (drift.rows != dim || drift.cols != 1)
    throw std::invalid_argument("DiffusionSpec: drift must be dim x 1");
  if (sigma.rows != dim)
    throw std::invalid_argument("DiffusionSpec: sigma must have dim rows");
  if (!(box_radius > 0.0))
    throw std::invalid_argument("DiffusionSpec: bad box radius");
}

void NeighborhoodSpec::validate() const {
  if (!(horizon > 0.0) || !(eta > 0.0) || !(radius > 0.0) || time_cells < 1 ||
      space_cells < 1)
    throw std::invalid_argument("NeighborhoodSpec: bad extents");
}

RouteAResult route_a_overshoot(const CadlagPath& y) {
  const TimeValue tau = first_passage(y, 0.0);
  if (tau.infinite())
    throw std::invalid_argument("route_a_overshoot: no finite passage");
  const double v = y.value_at(tau.seconds());
  if (v > 0.0) return {true, v};
  return {false, 0.0};
}

std::string to_string(RouteBStatus s) {
  switch (s) {
    case RouteBStatus::kPass:
      return "PASS";
    case RouteBStatus::kFail:
      return "FAIL";
    case RouteBStatus::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

RouteBReport route_b_noncharacteristic(const DiffusionSpec& diffusion,
                                       const BarrierField& field,
                                       const NeighborhoodSpec& window,
                                       double c) {
  diffusion.validate();
  window.validate();
  if (!(c > 0.0))
    throw std::invalid_argument("route_b: threshold must be positive");
  if (field.dimension() != diffusion.dim)
    throw std::invalid_argument("route_b: dimension mismatch");

  const int d = diffusion.dim;
  const int m = diffusion.sigma.cols;

  RouteBReport report;
  report.threshold = c;
  report.time_cells = window.time_cells;
  report.space_cells = window.space_cells;
  report.grad_step = field.grad_step();
  report.min_norm = std::numeric_limits<double>::infinity();

  // Finite-difference gradients need room inside a gridded field's box;
  // inset the scan so every probe stays evaluable.
  const double inset = field.grad_step();

  std::vector<double> x(d);
  std::vector<int> idx(d, 0);
  const auto at_point = [&](double t) {
    if (!field.in_domain(t, x)) return;
    for (int k = 0; k < d; ++k)
      if (std::abs(x[k]) > diffusion.box_radius) return;
    if (inset > 0.0) {
      // Central differences probe x +- h along each axis; skip points whose
      // probes would leave the field's declared box.
      for (int k = 0; k < d; ++k) {
        const double xk = x[k];
        x[k] = xk + inset;
        const bool up_ok = field.in_domain(t, x);
        x[k] = xk - inset;
        const bool dn_ok = field.in_domain(t, x);
        x[k] = xk;
        if (!up_ok || !dn_ok) return;
      }
    }
    const double phi = field.value(t, x);
    if (std::abs(phi) > window.eta) return;
    ++report.band_points;

    const std::vector<double> grad = field.gradient(t, x);
    const std::vector<double> sig = diffusion.sigma.eval(x, t);
    double norm_sq = 0.0;
    for (int j = 0; j < m; ++j) {  // (sigma^T grad)_j = sum_i sigma_ij grad_i
      double comp = 0.0;
      for (int i = 0; i < d; ++i) comp += sig[i * m + j] * grad[i];
      norm_sq += comp * comp;
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < report.min_norm) {
      report.min_norm = norm;
      report.argmin_t = t;
      report.argmin_x = x;
    }
  };

  const double lo = -window.radius + inset;
  const double hi = window.radius - inset;
  for (;;) {
    for (int k = 0; k < d; ++k)
      x[k] = lo + (hi - lo) * idx[k] / window.space_cells;
    for (int i = 0; i <= window.time_cells; ++i)
      at_point(window.horizon * i / window.time_cells);
    int k = 0;
    while (k < d && ++idx[k] > window.space_cells) idx[k++] = 0;
    if (k == d) break;
  }

  if (report.band_points == 0) {
    report.status = RouteBStatus::kInconclusive;
    report.min_norm = 0.0;
    return report;
  }
  report.status =
      report.min_norm >= c ? RouteBStatus::kPass : RouteBStatus::kFail;
  return report;
}

}  // namespace exitflow
