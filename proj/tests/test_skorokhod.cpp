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
#include <vector>

#include "doctest.h"
#include "exitflow/cadlag_path.hpp"
#include "exitflow/exit_profile.hpp"
#include "exitflow/experiments.hpp"
#include "exitflow/rng.hpp"
#include "exitflow/skorokhod.hpp"

using namespace exitflow;

namespace {

constexpr double kTol = 1e-12;

MonotonePath unit_step_monotone() {  // 0 on [0,1), 1 on [1,2]
  return MonotonePath(0.0, CadlagPath::step({0.0, 1.0}, {0.0, 1.0}, 2.0));
}

// Random nondecreasing path mixing flats, ramps and upward jumps. Dyadic
// breakpoints and integer levels keep every comparison exact.
MonotonePath random_monotone(CounterRng& rng, double lo, double width) {
  std::vector<PathSegment> segs;
  const int pieces = 1 << (rng.next_u64() % 3);  // 1, 2 or 4
  double value = std::floor(rng.next_uniform() * 4);
  double t = 0.0;
  for (int i = 0; i < pieces; ++i) {
    PathSegment s;
    s.start = t;
    value += std::floor(rng.next_uniform() * 3);  // jump of 0, 1 or 2
    s.value = value;
    if (rng.next_u64() & 1) {
      s.kind = SegmentKind::kLinear;
      s.slope = std::floor(rng.next_uniform() * 3);
      value += s.slope * (width / pieces);
    } else {
      s.kind = SegmentKind::kConstant;
      s.slope = 0.0;
    }
    segs.push_back(s);
    t += width / pieces;
  }
  const double terminal = value + std::floor(rng.next_uniform() * 2);
  return MonotonePath(lo, CadlagPath(std::move(segs), terminal, width));
}

}  // namespace

TEST_CASE("clock of simple monotone paths") {
  const auto ramp = theta(
      MonotonePath(0.0, CadlagPath::linear(0.0, 1.0, 1.0)));
  CHECK(ramp.length == 2.0);
  CHECK(ramp.theta.value(0.5) == 1.0);  // 2t

  const auto step = theta(unit_step_monotone());
  CHECK(step.length == 3.0);
  CHECK(step.theta.value(0.5) == 0.5);   // t below the jump
  CHECK(step.theta.value(1.5) == 2.5);   // t + 1 above it
  CHECK(step.theta.left_limit(1.0) == 1.0);
  CHECK(step.theta.value(1.0) == 2.0);

  const auto flat = theta(MonotonePath(1.0, CadlagPath::constant(7.0, 2.0)));
  CHECK(flat.length == 2.0);
  CHECK(flat.theta.value(2.0) == 1.0);  // t - a
}

TEST_CASE("canonical trace of the unit step: hand values before scaling") {
  const ParametricRep rep = canonical_rep(unit_step_monotone());
  CHECK(rep.length() == 3.0);
  // r: l on [0,1], pinned at 1 on [1,2], l-1 on [2,3].
  CHECK(rep.r_at(0.5) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(rep.r_at(1.0) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(rep.r_at(1.7) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(rep.r_at(2.0) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(rep.r_at(2.5) == doctest::Approx(1.5).epsilon(kTol));
  // u: 0 on [0,1], l-1 on [1,2], 1 on [2,3].
  CHECK(rep.u_at(0.5) == doctest::Approx(0.0).epsilon(kTol));
  CHECK(rep.u_at(1.5) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(rep.u_at(2.5) == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("canonical trace of a ramp and of a constant") {
  const ParametricRep ramp =
      canonical_rep(MonotonePath(0.0, CadlagPath::linear(0.0, 1.0, 1.0)));
  CHECK(ramp.r_at(1.0) == doctest::Approx(0.5).epsilon(kTol));  // l/2
  CHECK(ramp.u_at(1.0) == doctest::Approx(0.5).epsilon(kTol));

  const ParametricRep flat =
      canonical_rep(MonotonePath(0.0, CadlagPath::constant(0.0, 1.0)));
  CHECK(flat.r_at(0.7) == doctest::Approx(0.7).epsilon(kTol));  // l
  CHECK(flat.u_at(0.7) == doctest::Approx(0.0).epsilon(kTol));
}

TEST_CASE("canonical knots lie on the completed graph") {
  CounterRng rng(2026, 41);
  for (int rep_i = 0; rep_i < 1000; ++rep_i) {
    const MonotonePath g = random_monotone(rng, 0.0, 2.0);
    const ParametricRep rep = canonical_rep(g);
    for (std::size_t i = 0; i < rep.knot_count(); ++i) {
      const double r = rep.knot_r(i);
      const double u = rep.knot_u(i);
      CHECK(g.left_limit(r) <= u + kTol);
      CHECK(u <= g.value(r) + kTol);
    }
  }
}

TEST_CASE("rescaled inverse is Lipschitz with the length as constant") {
  CounterRng rng(2026, 42);
  for (int rep_i = 0; rep_i < 300; ++rep_i) {
    const MonotonePath g = random_monotone(rng, 0.0, 2.0);
    const ParametricRep rep = canonical_rep(g);
    for (std::size_t i = 1; i < rep.knot_count(); ++i) {
      const double ds = (rep.knot_l(i) - rep.knot_l(i - 1)) / rep.length();
      const double dr = rep.knot_r(i) - rep.knot_r(i - 1);
      CHECK(dr <= rep.length() * ds + kTol);
      CHECK(dr >= -kTol);  // nondecreasing
    }
  }
}

TEST_CASE("graph-metric bound: identical paths and constant shifts") {
  CounterRng rng(2026, 43);
  for (int rep_i = 0; rep_i < 200; ++rep_i) {
    const MonotonePath f = random_monotone(rng, 0.0, 2.0);
    CHECK(m1_upper_bound(f, f) == 0.0);
    const double c = std::floor(rng.next_uniform() * 5) - 2;
    const MonotonePath g(0.0, f.path().shifted(c));
    CHECK(m1_upper_bound(f, g) <= std::abs(c) + kTol);
  }
}

TEST_CASE("graph-metric bound rejects mismatched intervals") {
  const MonotonePath f(0.0, CadlagPath::constant(0.0, 1.0));
  const MonotonePath g(0.0, CadlagPath::constant(0.0, 2.0));
  CHECK_THROWS_AS(m1_upper_bound(f, g), std::invalid_argument);
}

TEST_CASE("endpoint gaps bound the length difference") {
  CounterRng rng(2026, 44);
  for (int rep_i = 0; rep_i < 300; ++rep_i) {
    const MonotonePath f = random_monotone(rng, 0.0, 2.0);
    const MonotonePath g = random_monotone(rng, 0.0, 2.0);
    const double lf = theta(f).length;
    const double lg = theta(g).length;
    const double bound = std::abs(f.start_value() - g.start_value()) +
                         std::abs(f.end_value() - g.end_value());
    CHECK(std::abs(lf - lg) <= bound + kTol);
  }
}

TEST_CASE("monotone pointwise convergence implies a uniform gap bound") {
  // The inverses of the staircase clocks converge pointwise to the inverse
  // of the two-step clock, which is continuous; the gap must then collapse
  // uniformly over the grid, not just pointwise.
  const MonotonePath limit(
      0.0, CadlagPath::linear(0.0, 1.0, 1.0));  // continuous target
  const ParametricRep rep_limit = canonical_rep(limit);
  double prev = 1e9;
  for (long n : {4L, 16L, 64L}) {
    // Staircase with n steps of height 1/n over [0,1].
    std::vector<double> times, values;
    for (long k = 0; k < n; ++k) {
      times.push_back(static_cast<double>(k) / n);
      values.push_back(static_cast<double>(k) / n);
    }
    const MonotonePath stairs(
        0.0, CadlagPath::step(times, values, 1.0).shifted(0.0));
    const ParametricRep rep_n = canonical_rep(stairs);
    double worst = 0.0;
    for (int i = 0; i <= 256; ++i) {
      const double s = static_cast<double>(i) / 256.0;
      worst = std::max(worst, std::abs(rep_n.r_hat(s) - rep_limit.r_hat(s)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("time-change cost basics") {
  const CadlagPath f = CadlagPath::step({0.0, 1.0}, {0.0, 1.0}, 2.0);
  CHECK(j1_discrepancy(f, f, TimeChange::identity(2.0)) == 0.0);

  const CadlagPath g = CadlagPath::step({0.0, 1.1}, {0.0, 1.0}, 2.0);
  const TimeChange lam({{0.0, 0.0}, {1.1, 1.0}, {2.0, 2.0}});
  CHECK(j1_discrepancy(f, g, lam) == doctest::Approx(0.1).epsilon(kTol));

  CHECK_THROWS_AS(
      j1_discrepancy(f, CadlagPath::constant(0.0, 1.0),
                     TimeChange::identity(2.0)),
      std::invalid_argument);
}

TEST_CASE("time-change search aligns a shifted jump") {
  const CadlagPath f = CadlagPath::step({0.0, 1.0}, {0.0, 1.0}, 2.0);
  CHECK(j1_upper_bound(f, f).bound == 0.0);

  const CadlagPath g = CadlagPath::step({0.0, 1.1}, {0.0, 1.0}, 2.0);
  const J1SearchResult res = j1_upper_bound(f, g, 8, 3);
  CHECK(res.bound <= 0.1 + 1e-6);
  CHECK(res.bound >= 0.1 - kTol);  // the jump displacement is unavoidable
}

TEST_CASE("uniform closeness bounds the search result") {
  // The staircase converges uniformly at rate 1/n, and the identity change
  // already certifies that cost.
  const CadlagPath y = two_step_path();
  const CadlagPath y10 = staircase_path(10);
  CHECK(j1_discrepancy(y10, y, TimeChange::identity(3.0)) <= 0.1 + kTol);
  CHECK(j1_upper_bound(y10, y, 6, 2).bound <= 0.1 + kTol);
}

TEST_CASE("certified step lower bound: basics") {
  const CadlagPath f = CadlagPath::step({0.0, 1.0}, {0.0, 1.0}, 2.0);
  CHECK(j1_lower_bound_step(f, f) == 0.0);

  // A unit jump against a flat path: values sit 0.5 apart somewhere, and no
  // jump is available to match, so the distance is at least a quarter.
  const CadlagPath flat = CadlagPath::constant(0.5, 2.0);
  CHECK(j1_lower_bound_step(f, flat) >= 0.25);

  CHECK_THROWS_AS(
      j1_lower_bound_step(f, CadlagPath::linear(0.0, 1.0, 2.0)),
      std::invalid_argument);
}

TEST_CASE("certified lower bound never exceeds the search upper bound") {
  CounterRng rng(2026, 45);
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<double> t1{0.0}, v1{std::floor(rng.next_uniform() * 3)};
    std::vector<double> t2 = t1, v2 = v1;
    for (int i = 1; i < 4; ++i) {
      t1.push_back(i * 0.5);
      v1.push_back(std::floor(rng.next_uniform() * 5) - 2);
      t2.push_back(i * 0.5 + 0.1 * rng.next_uniform());
      v2.push_back(std::floor(rng.next_uniform() * 5) - 2);
    }
    const CadlagPath f = CadlagPath::step(t1, v1, 2.5);
    const CadlagPath g = CadlagPath::step(t2, v2, 2.5);
    const double lower = j1_lower_bound_step(f, g, 1e-4);
    const double upper = j1_upper_bound(f, g, 8, 3).bound;
    CHECK(lower <= upper + 1e-9);
  }
}

TEST_CASE("graph bound is below the time-change bound for monotone steps") {
  CounterRng rng(2026, 46);
  for (int rep = 0; rep < 40; ++rep) {
    // Monotone step pairs on [0, 2].
    std::vector<double> t1{0.0}, t2{0.0};
    std::vector<double> v1{0.0}, v2{0.0};
    double a = 0.0, b = 0.0;
    for (int i = 1; i < 4; ++i) {
      t1.push_back(i * 0.5);
      t2.push_back(i * 0.5);
      a += std::floor(rng.next_uniform() * 3);
      b += std::floor(rng.next_uniform() * 3);
      v1.push_back(a);
      v2.push_back(b);
    }
    const CadlagPath f = CadlagPath::step(t1, v1, 2.0);
    const CadlagPath g = CadlagPath::step(t2, v2, 2.0);
    const double m1 =
        m1_upper_bound(MonotonePath(0.0, f), MonotonePath(0.0, g));
    const double j1 = j1_upper_bound(f, g, 8, 3).bound;
    CHECK(m1 <= j1 + 1e-9);
  }
}

TEST_CASE("profile family: graph metric shrinks, step metric stays apart") {
  const ExitProfile limit = exit_profile(two_step_path(), 0.25, 0.75);
  const MonotonePath limit_mono(0.25, limit.finite_path());
  double prev = 1e9;
  for (long n : {10L, 100L, 1000L}) {
    const ExitProfile prof = exit_profile(staircase_path(n), 0.25, 0.75);
    const MonotonePath mono(0.25, prof.finite_path());
    const double m1 = m1_upper_bound(mono, limit_mono);
    CHECK(m1 < prev);
    prev = m1;
    if (n == 100) CHECK(m1 <= 0.1);
  }
  for (long n : {4L, 10L, 100L}) {
    const ExitProfile prof = exit_profile(staircase_path(n), 0.25, 0.75);
    const double lower =
        j1_lower_bound_step(prof.finite_path(), limit.finite_path());
    CHECK(lower >= 0.2);
  }
}
