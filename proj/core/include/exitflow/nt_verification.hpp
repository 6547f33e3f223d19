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

#ifndef EXITFLOW_NT_VERIFICATION_HPP_
#define EXITFLOW_NT_VERIFICATION_HPP_

#include <string>
#include <vector>

#include "exitflow/barrier.hpp"
#include "exitflow/cadlag_path.hpp"

namespace exitflow {

// A matrix-valued coefficient field, constant or affine in the state:
// entry_ij(x) = base_ij + sum_k x_k * x_coeffs[k]_ij.
struct MatrixField {
  int rows = 1;
  int cols = 1;
  std::vector<double> base;                      // row-major, rows*cols
  std::vector<std::vector<double>> x_coeffs;     // one per state coordinate

  static MatrixField constant(int rows, int cols, std::vector<double> base);
  void validate(int state_dim) const;
  // Row-major rows x cols matrix at (x, t).
  std::vector<double> eval(std::span<const double> x, double t) const;
};

// Drift and diffusion coefficients of a state process, with the box on
// which evaluation is declared valid.
struct DiffusionSpec {
  int dim = 1;
  MatrixField drift;      // dim x 1
  MatrixField sigma;      // dim x m
  double box_radius = 0;  // coefficients valid for |x_k| <= box_radius
  void validate() const;
};

// Space-time scan window: horizon, band half-width around the zero level,
// spatial box radius, and lattice cells per axis.
struct NeighborhoodSpec {
  double horizon = 1.0;
  double eta = 0.1;
  double radius = 1.0;
  int time_cells = 32;
  int space_cells = 32;
  void validate() const;
};

struct RouteAResult {
  bool overshoot = false;
  double value = 0.0;  // y at the passage time (0 when there is no overshoot)
};

// Whether the scalar path crosses 0 by a jump: its value at the first
// passage is strictly positive. A positive answer certifies the overshoot
// half of non-tangency by right-continuity alone. Requires a finite passage.
RouteAResult route_a_overshoot(const CadlagPath& y);

enum class RouteBStatus { kPass, kFail, kInconclusive };

std::string to_string(RouteBStatus s);

struct RouteBReport {
  RouteBStatus status = RouteBStatus::kInconclusive;
  double threshold = 0.0;     // the requested lower bound c
  double min_norm = 0.0;      // min of |sigma^T grad| over the band lattice
  double argmin_t = 0.0;
  std::vector<double> argmin_x;
  long band_points = 0;       // lattice points inside the band
  int time_cells = 0;
  int space_cells = 0;
  double grad_step = 0.0;     // 0 when the gradient is closed-form
};

// Scans the lattice points of [0, horizon] x [-radius, radius]^d lying in
// the band |field| <= eta and takes the minimum of |sigma^T grad field|.
// PASS certifies the non-degeneracy threshold on the lattice (exact for
// affine fields with constant sigma, where the scanned quantity is
// constant); an empty band at this resolution is INCONCLUSIVE.
RouteBReport route_b_noncharacteristic(const DiffusionSpec& diffusion,
                                       const BarrierField& field,
                                       const NeighborhoodSpec& window,
                                       double c);

}  // namespace exitflow

#endif  // EXITFLOW_NT_VERIFICATION_HPP_
