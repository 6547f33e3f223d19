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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "exitflow/barrier.hpp"
#include "exitflow/exit_profile.hpp"
#include "exitflow/experiments.hpp"
#include "exitflow/first_passage.hpp"
#include "exitflow/rng.hpp"
#include "exitflow/skorokhod.hpp"

using namespace exitflow;

namespace {

constexpr double kTol = 1e-12;

BarrierField affine_const(double level) {
  return BarrierField::affine({BoundaryCurve::Family::kConstant, level, 0.0});
}

CadlagPath random_step(CounterRng& rng, double horizon) {
  const int pieces = 1 + static_cast<int>(rng.next_u64() % 6);
  std::vector<double> times, values;
  for (int i = 0; i < pieces; ++i) {
    times.push_back(horizon * i / pieces);
    values.push_back(std::floor(rng.next_uniform() * 9) - 4);
  }
  return CadlagPath::step(times, values, horizon);
}

}  // namespace

TEST_CASE("first passage of the sticking path and its nudges") {
  const CadlagPath y = sticking_path();
  CHECK(first_passage(y, 0.0) == TimeValue(1.0));
  for (long n : {1L, 10L, 1000L}) {
    CHECK(first_passage(y.shifted(-1.0 / n), 0.0).infinite());
    CHECK(first_passage(y.shifted(1.0 / n), 0.0) ==
          TimeValue(1.0 - 1.0 / n));
  }
}

TEST_CASE("first passage of the plateau path at the plateau level") {
  for (long n : {4L, 100L}) {
    const CadlagPath y = plateau_path(0.5, n);
    CHECK(first_passage(y, 0.5) == TimeValue(1.0));
    const TimeValue up = first_passage(y.shifted(1.0 / n), 0.5);
    CHECK(up.seconds() ==
          doctest::Approx(1.0 - 1.0 / std::sqrt(double(n))).epsilon(kTol));
    CHECK(first_passage(y.shifted(-1.0 / n), 0.5) == TimeValue(2.0));
  }
}

TEST_CASE("first passage triggers on weak inequality at an exact touch") {
  // Rises to exactly 1 at t=1, then falls; the touch is the passage.
  const CadlagPath y = CadlagPath::piecewise_linear(
      {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.0}});
  CHECK(first_passage(y, 1.0) == TimeValue(1.0));
  // A left limit that only approaches the level does not trigger.
  const CadlagPath z =
      CadlagPath({{0.0, SegmentKind::kLinear, 0.0, 1.0},
                  {1.0, SegmentKind::kConstant, -1.0, 0.0}},
                 -1.0, 2.0);
  CHECK(first_passage(z, 1.0).infinite());
}

TEST_CASE("exit times through the barrier machinery") {
  CHECK(exit_time(CadlagPath::constant(0.0, 5.0), affine_const(1.0))
            .infinite());
  CHECK(exit_time(CadlagPath::linear(0.0, 1.0, 2.0), affine_const(1.0)) ==
        TimeValue(1.0));
  CHECK(exit_time(CadlagPath::constant(0.0, 5.0), affine_const(-1.0)) ==
        TimeValue(0.0));
}

TEST_CASE("profile of the two-step path matches the band values") {
  const ExitProfile prof = exit_profile(two_step_path(), 0.25, 0.75);
  CHECK(prof.value_at(0.25) == TimeValue(1.0));
  CHECK(prof.value_at(0.5) == TimeValue(1.0));
  CHECK(prof.value_at(0.5000001) == TimeValue(2.0));
  CHECK(prof.value_at(0.75) == TimeValue(2.0));
}

TEST_CASE("profile of the staircase path walks the bands") {
  const ExitProfile prof = exit_profile(staircase_path(4), 0.25, 0.75);
  // Band k = 1 covers (1/2, 1/2 + 1/16] and reads 1 + 1/4.
  CHECK(prof.value_at(0.5 + 1.0 / 16.0) == TimeValue(1.25));
  CHECK(prof.value_at(0.52) == TimeValue(1.25));
}

TEST_CASE("profile of the identity path is the identity") {
  const ExitProfile prof =
      exit_profile(CadlagPath::linear(0.0, 1.0, 1.0), 0.0, 1.0);
  CounterRng rng(2026, 31);
  for (int rep = 0; rep < 200; ++rep) {
    const double u = rng.next_uniform();
    CHECK(prof.value_at(u).seconds() == doctest::Approx(u).epsilon(kTol));
  }
  CHECK(prof.value_at(1.0) == TimeValue(1.0));
}

TEST_CASE("profile values agree with first passage at every level") {
  CounterRng rng(2026, 32);
  for (int rep = 0; rep < 100; ++rep) {
    const CadlagPath y = random_step(rng, 2.0);
    const ExitProfile prof = exit_profile(y, -5.0, 5.0);
    for (int probe = 0; probe < 50; ++probe) {
      const double u = 10.0 * rng.next_uniform() - 5.0;
      CHECK(prof.value_at(u) == first_passage(y, u));
    }
  }
}

TEST_CASE("first passage is monotone in the level") {
  CounterRng rng(2026, 33);
  for (int rep = 0; rep < 100; ++rep) {
    const CadlagPath y = random_step(rng, 2.0);
    const double u = 8.0 * rng.next_uniform() - 4.0;
    const double v = u + 2.0 * rng.next_uniform();
    CHECK(first_passage(y, u) <= first_passage(y, v));
  }
}

TEST_CASE("shifted fields reproduce per-level exits") {
  CounterRng rng(2026, 34);
  for (int rep = 0; rep < 100; ++rep) {
    const CadlagPath x = random_step(rng, 2.0);
    const double level = 2.0 * rng.next_uniform();
    const double u = 2.0 * rng.next_uniform() - 1.0;
    const BarrierField phi = affine_const(level);
    CHECK(exit_time(x, phi.shifted(u)) ==
          first_passage(scalarize(x, phi), u));
  }
}

TEST_CASE("regular levels: slope, jump, plateau") {
  CHECK_FALSE(is_regular_level(sticking_path(), 0.0).regular);
  CHECK_FALSE(is_regular_level(plateau_path(0.5, 0), 0.5).regular);
  const auto through = is_regular_level(CadlagPath::linear(0.0, 1.0, 2.0), 0.5);
  CHECK(through.regular);
  REQUIRE(through.witness.has_value());
  CHECK(*through.witness > 0.5);
  CHECK(*through.witness <= 0.5 + 2.0 * std::pow(2.0, -20));

  const auto jumped = is_regular_level(
      CadlagPath::step({0.0, 1.0}, {-0.5, 0.3}, 2.0), 0.0);
  CHECK(jumped.regular);

  CHECK_THROWS_AS(is_regular_level(CadlagPath::constant(-1.0, 1.0), 0.0),
                  std::invalid_argument);
}

TEST_CASE("regularity implies two-sided passage stability") {
  const CadlagPath y = CadlagPath::linear(-1.0, 1.0, 3.0);  // crosses 0 at 1
  REQUIRE(is_regular_level(y, 0.0).regular);
  double prev_gap = 1e9;
  for (long n : {10L, 100L, 1000L}) {
    const TimeValue up = first_passage(y.shifted(1.0 / n), 0.0);
    const TimeValue dn = first_passage(y.shifted(-1.0 / n), 0.0);
    const double gap =
        std::max(std::abs(up.seconds() - 1.0), std::abs(dn.seconds() - 1.0));
    CHECK(gap <= 1.0 / n + kTol);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("non-regularity yields one-sided instability") {
  const CadlagPath y = sticking_path();
  for (long n : {10L, 100L, 1000L})
    CHECK(first_passage(y.shifted(-1.0 / n), 0.0).infinite());
}

TEST_CASE("verdicts of the non-tangency checker") {
  // Sticking: finite exit but the level is not regular.
  const NtReport stick = check_nt_scalar(sticking_path(), 3.0);
  CHECK(stick.verdict == NtCase::kFailNtPlus);
  CHECK(stick.exit == TimeValue(1.0));

  // A slope-1 crossing of a constant boundary at 1.
  const NtReport cross =
      check_nt(CadlagPath::linear(0.0, 1.0, 3.0), affine_const(1.0), 3.0);
  CHECK(cross.verdict == NtCase::kGenuineCrossing);
  CHECK(cross.exit == TimeValue(1.0));
  REQUIRE(cross.overshoot_witness.has_value());
  CHECK(cross.overshoot_witness->first > 1.0);
  CHECK(cross.overshoot_witness->second > 0.0);

  // Far from the boundary on the whole horizon.
  const NtReport clear =
      check_nt(CadlagPath::constant(0.0, 5.0), affine_const(1.0), 5.0);
  CHECK(clear.verdict == NtCase::kNoExit);
  CHECK(clear.interior_buffer == -1.0);

  // No exit but the sup reaches 0: a tent peaking exactly at the boundary
  // with a jump away at the peak.
  const CadlagPath graze =
      CadlagPath({{0.0, SegmentKind::kLinear, -1.0, 1.0},
                  {1.0, SegmentKind::kConstant, -1.0, 0.0}},
                 -1.0, 2.0);
  const NtReport grazed = check_nt_scalar(graze, 2.0);
  CHECK(grazed.verdict == NtCase::kFailNtMinus);
  CHECK(grazed.interior_buffer == 0.0);
}

TEST_CASE("compactification endpoints and monotonicity") {
  CHECK(compactify(TimeValue(0.0)) == 0.0);
  CHECK(compactify(TimeValue::infinity()) == 1.0);
  CHECK(compactify(TimeValue(1.0)) == 0.5);
  CounterRng rng(2026, 35);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = 100.0 * rng.next_uniform();
    const double b = a + 100.0 * rng.next_uniform() + 1e-9;
    CHECK(compactify(TimeValue(a)) < compactify(TimeValue(b)));
    CHECK(compactify(TimeValue(b)) < 1.0);
  }
}

TEST_CASE("compactified profiles are monotone unit-interval paths") {
  CounterRng rng(2026, 36);
  for (int rep = 0; rep < 50; ++rep) {
    const CadlagPath y = random_step(rng, 2.0);
    const ExitProfile prof = exit_profile(y, -1.0, 6.0);  // tail goes infinite
    const MonotonePath mp = prof.compactified();
    CHECK(mp.path().is_nondecreasing());
    CHECK(mp.start_value() >= 0.0);
    CHECK(mp.end_value() <= 1.0);
  }
}
