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

#include <stdexcept>

#include "doctest.h"
#include "exitflow/barrier.hpp"
#include "exitflow/experiments.hpp"
#include "exitflow/first_passage.hpp"
#include "exitflow/nt_verification.hpp"
#include "exitflow/rng.hpp"

using namespace exitflow;

namespace {

NeighborhoodSpec small_window() {
  NeighborhoodSpec w;
  w.horizon = 1.0;
  w.eta = 0.25;
  w.radius = 2.0;
  w.time_cells = 8;
  w.space_cells = 16;
  return w;
}

DiffusionSpec unit_diffusion_1d() {
  DiffusionSpec d;
  d.dim = 1;
  d.drift = MatrixField::constant(1, 1, {0.0});
  d.sigma = MatrixField::constant(1, 1, {1.0});
  d.box_radius = 10.0;
  return d;
}

// The planar field x2 - 1 sampled exactly on a coarse lattice.
BarrierField planar_height_field() {
  GridField data;
  data.t_axis = {0.0, 1.0};
  data.z_axes = {{-2.0, 2.0}, {-2.0, 2.0}};
  data.values.assign(8, 0.0);
  int idx = 0;
  for (int it = 0; it < 2; ++it)
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        data.values[idx++] = (i2 == 0 ? -2.0 : 2.0) - 1.0;
  return BarrierField::grid(data);
}

}  // namespace

TEST_CASE("jump overshoot detection") {
  const CadlagPath jumping =
      CadlagPath::step({0.0, 1.0}, {-0.5, 0.3}, 2.0);
  const RouteAResult hit = route_a_overshoot(jumping);
  CHECK(hit.overshoot);
  CHECK(hit.value == 0.3);

  const RouteAResult stuck = route_a_overshoot(sticking_path());
  CHECK_FALSE(stuck.overshoot);
  CHECK(stuck.value == 0.0);

  // A continuous crossing carries no jump evidence.
  const RouteAResult ramp =
      route_a_overshoot(CadlagPath::linear(-1.0, 1.0, 3.0));
  CHECK_FALSE(ramp.overshoot);

  CHECK_THROWS_AS(route_a_overshoot(CadlagPath::constant(-1.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("jump overshoot agrees with the non-tangency checker") {
  CounterRng rng(2026, 51);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> times{0.0}, values{-1.0 - rng.next_uniform()};
    for (int i = 1; i < 4; ++i) {
      times.push_back(i * 0.5);
      values.push_back(4.0 * rng.next_uniform() - 2.0);
    }
    const CadlagPath y = CadlagPath::step(times, values, 2.0);
    if (first_passage(y, 0.0).infinite()) continue;
    const RouteAResult a = route_a_overshoot(y);
    if (a.overshoot)
      CHECK(check_nt_scalar(y, 2.0).verdict == NtCase::kGenuineCrossing);
  }
}

TEST_CASE("unit-noise constant-boundary certificate holds at threshold 1") {
  const BarrierField phi =
      BarrierField::affine({BoundaryCurve::Family::kConstant, 1.0, 0.0});
  const RouteBReport report = route_b_noncharacteristic(
      unit_diffusion_1d(), phi, small_window(), 1.0);
  CHECK(report.status == RouteBStatus::kPass);
  CHECK(report.min_norm == 1.0);  // closed-form gradient, constant sigma
  CHECK(report.band_points > 0);
  CHECK(report.grad_step == 0.0);
}

TEST_CASE("degenerate planar noise fails at every threshold") {
  DiffusionSpec d;
  d.dim = 2;
  d.drift = MatrixField::constant(2, 1, {0.0, 0.0});
  d.sigma = MatrixField::constant(2, 2, {1.0, 0.0, 0.0, 0.0});
  d.box_radius = 10.0;
  const BarrierField phi = planar_height_field();
  NeighborhoodSpec w = small_window();
  w.space_cells = 16;
  for (double c : {0.01, 1.0, 100.0}) {
    const RouteBReport report = route_b_noncharacteristic(d, phi, w, c);
    CHECK(report.status == RouteBStatus::kFail);
    CHECK(report.min_norm <= 1e-9);
  }
}

TEST_CASE("certificate scales with the noise amplitude") {
  DiffusionSpec d = unit_diffusion_1d();
  d.sigma = MatrixField::constant(1, 1, {2.0});
  const BarrierField phi =
      BarrierField::affine({BoundaryCurve::Family::kConstant, 1.0, 0.0});
  CHECK(route_b_noncharacteristic(d, phi, small_window(), 2.0).status ==
        RouteBStatus::kPass);
  CHECK(route_b_noncharacteristic(d, phi, small_window(), 2.5).status ==
        RouteBStatus::kFail);
}

TEST_CASE("certificate is monotone in the threshold") {
  const BarrierField phi =
      BarrierField::affine({BoundaryCurve::Family::kConstant, 1.0, 0.0});
  const DiffusionSpec d = unit_diffusion_1d();
  bool passed_before = true;
  for (double c : {0.25, 0.5, 1.0, 1.0001, 2.0}) {
    const bool pass =
        route_b_noncharacteristic(d, phi, small_window(), c).status ==
        RouteBStatus::kPass;
    if (!passed_before) CHECK_FALSE(pass);
    passed_before = pass;
  }
}

TEST_CASE("lattice refinement can only lower the scanned minimum") {
  // State-dependent noise: sigma(x) = 1 + x/4 over the band around a sloped
  // boundary, so the minimum genuinely moves with resolution.
  DiffusionSpec d = unit_diffusion_1d();
  d.sigma.x_coeffs = {{0.25}};
  const BarrierField phi =
      BarrierField::affine({BoundaryCurve::Family::kLinear, 0.0, 0.5});
  NeighborhoodSpec coarse = small_window();
  coarse.time_cells = 4;
  coarse.space_cells = 6;
  NeighborhoodSpec fine = coarse;
  fine.time_cells = coarse.time_cells * 3;
  fine.space_cells = coarse.space_cells * 3;
  const RouteBReport lo =
      route_b_noncharacteristic(d, phi, coarse, 0.01);
  const RouteBReport hi = route_b_noncharacteristic(d, phi, fine, 0.01);
  CHECK(hi.min_norm <= lo.min_norm + 1e-12);
  CHECK(hi.band_points >= lo.band_points);
}

TEST_CASE("empty bands are reported, not decided") {
  // The band |x - 50| <= 0.25 lies far outside the scanned box.
  const BarrierField phi =
      BarrierField::affine({BoundaryCurve::Family::kConstant, 50.0, 0.0});
  const RouteBReport report = route_b_noncharacteristic(
      unit_diffusion_1d(), phi, small_window(), 1.0);
  CHECK(report.status == RouteBStatus::kInconclusive);
  CHECK(report.band_points == 0);
}

TEST_CASE("specs validate their shapes") {
  DiffusionSpec bad = unit_diffusion_1d();
  bad.drift = MatrixField::constant(2, 1, {0.0, 0.0});
  const BarrierField phi =
      BarrierField::affine({BoundaryCurve::Family::kConstant, 1.0, 0.0});
  CHECK_THROWS_AS(
      route_b_noncharacteristic(bad, phi, small_window(), 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      route_b_noncharacteristic(unit_diffusion_1d(), phi, small_window(),
                                -1.0),
      std::invalid_argument);
}
