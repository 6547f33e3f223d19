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
#include <algorithm>
#include <vector>
#include <stdexcept>

#include "doctest.h"
#include "exitflow/cadlag_path.hpp"
#include "exitflow/path_io.hpp"
#include "exitflow/rng.hpp"
#include "exitflow/time_change.hpp"

using namespace exitflow;

namespace {

constexpr double kTol = 1e-12;

CadlagPath unit_step() {  // 0 on [0,1), 1 on [1,2]
  return CadlagPath::step({0.0, 1.0}, {0.0, 1.0}, 2.0);
}

CadlagPath min_t_minus_1() {  // min(t-1, 0) on [0,3]
  return CadlagPath({{0.0, SegmentKind::kLinear, -1.0, 1.0},
                     {1.0, SegmentKind::kConstant, 0.0, 0.0}},
                    0.0, 3.0);
}

// Random exact-ish path generator for property tests.
CadlagPath random_path(CounterRng& rng, double horizon) {
  const int pieces = 1 + static_cast<int>(rng.next_u64() % 5);
  std::vector<PathSegment> segs;
  double t = 0.0;
  for (int i = 0; i < pieces; ++i) {
    PathSegment s;
    s.start = t;
    s.kind = (rng.next_u64() & 1) ? SegmentKind::kLinear
                                  : SegmentKind::kConstant;
    s.value = std::floor(rng.next_uniform() * 8) - 4;
    s.slope = s.kind == SegmentKind::kLinear
                  ? std::floor(rng.next_uniform() * 5) - 2
                  : 0.0;
    segs.push_back(s);
    t += horizon / pieces;
  }
  const double terminal = std::floor(rng.next_uniform() * 8) - 4;
  return CadlagPath(std::move(segs), terminal, horizon);
}

}  // namespace

TEST_CASE("evaluation is right-continuous at breakpoints") {
  const CadlagPath p = unit_step();
  CHECK(p.value_at(1.0) == 1.0);  // the jump value, not the limit
  CHECK(p.value_at(0.5) == 0.0);
  CHECK(p.value_at(2.0) == 1.0);

  const CadlagPath y = min_t_minus_1();
  CHECK(y.value_at(2.0) == 0.0);
  CHECK(y.value_at(0.0) == -1.0);
}

TEST_CASE("left limits") {
  const CadlagPath p = unit_step();
  CHECK(p.left_limit(1.0) == 0.0);
  CHECK(p.left_limit(0.0) == 0.0);  // convention at the origin
  const CadlagPath v = CadlagPath::linear(0.0, 1.0, 2.0);
  CHECK(v.left_limit(1.0) == 1.0);
}

TEST_CASE("evaluation rejects points off the horizon") {
  const CadlagPath p = unit_step();
  CHECK_THROWS_AS(p.value_at(-0.1), std::out_of_range);
  CHECK_THROWS_AS(p.value_at(2.5), std::out_of_range);
  CHECK_THROWS_AS(p.left_limit(2.5), std::out_of_range);
}

TEST_CASE("suprema over subintervals") {
  const CadlagPath y = min_t_minus_1();
  CHECK(y.sup_on(1.0, 3.0, false, true) == 0.0);  // flat at 0 from t=1 on

  const CadlagPath p = unit_step();
  CHECK(p.sup_on(0.0, 1.0, true, false) == 0.0);  // jump excluded

  const CadlagPath v = CadlagPath::linear(0.0, 1.0, 2.0);
  CHECK(v.sup_on(0.5, 1.5) == 1.5);

  // Unattained left limits still count toward the supremum.
  CHECK(v.sup_on(0.0, 2.0, true, false) == 2.0);

  // Empty interval: sup over nothing.
  CHECK(p.sup_on(1.0, 1.0, false, false) ==
        -std::numeric_limits<double>::infinity());
  CHECK(p.sup_on(1.0, 1.0, true, true) == 1.0);
}

TEST_CASE("sup splits at interior points") {
  CounterRng rng(2026, 7);
  for (int rep = 0; rep < 200; ++rep) {
    const CadlagPath p = random_path(rng, 2.0);
    const double m = 0.25 + 1.5 * rng.next_uniform();
    const double whole = p.sup_on(0.0, 2.0);
    const double split =
        std::max(p.sup_on(0.0, m), p.sup_on(m, 2.0));
    CHECK(whole == doctest::Approx(split).epsilon(kTol));
  }
}

TEST_CASE("right-continuity along a mesh of shrinking offsets") {
  CounterRng rng(2026, 8);
  for (int rep = 0; rep < 200; ++rep) {
    const CadlagPath p = random_path(rng, 2.0);
    const double t = 1.9 * rng.next_uniform();
    const double v = p.value_at(t);
    // Keep the mesh inside the piece containing t: the gap then shrinks
    // like slope * h (slopes here are small integers).
    double next_cut = p.horizon();
    for (const PathSegment& s : p.segments())
      if (s.start > t) {
        next_cut = s.start;
        break;
      }
    for (double h = (next_cut - t) * 0.5; h > 1e-12; h *= 0.125)
      CHECK(std::abs(p.value_at(t + h) - v) <= 4.0 * h + kTol);
  }
}

TEST_CASE("time change: identity leaves paths structurally unchanged") {
  const CadlagPath p = unit_step();
  CHECK(p.time_changed(TimeChange::identity(2.0)) == p);

  // Knots only at the endpoints are also the identity.
  const TimeChange lam({{0.0, 0.0}, {2.0, 2.0}});
  CHECK(p.time_changed(lam) == p);
}

TEST_CASE("time change relocates a jump to the preimage") {
  // lambda with knots (0,0), (1,0.9), (2,2): the jump of the step path at 1
  // moves to the unique s with lambda(s) = 1.
  const TimeChange lam({{0.0, 0.0}, {1.0, 0.9}, {2.0, 2.0}});
  const CadlagPath moved = unit_step().time_changed(lam);
  // Piecewise-linear inverse: on [1,2] lambda rises 0.9 -> 2 with slope 1.1,
  // so lambda(s) = 1 at s = 1 + 0.1/1.1.
  const double s_star = 1.0 + 0.1 / 1.1;
  const auto js = moved.jumps();
  REQUIRE(js.size() == 1);
  CHECK(js[0].time == doctest::Approx(s_star).epsilon(kTol));
  CHECK(js[0].size == 1.0);
}

TEST_CASE("time change preserves the multiset of jump sizes") {
  CounterRng rng(2026, 9);
  for (int rep = 0; rep < 200; ++rep) {
    const CadlagPath p = random_path(rng, 2.0);
    const double mid = 0.4 + 1.2 * rng.next_uniform();
    const TimeChange lam({{0.0, 0.0}, {1.0, mid}, {2.0, 2.0}});
    std::vector<double> before, after;
    for (const Jump& j : p.jumps()) before.push_back(j.size);
    for (const Jump& j : p.time_changed(lam).jumps()) after.push_back(j.size);
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i)
      CHECK(before[i] == doctest::Approx(after[i]).epsilon(kTol));
  }
}

TEST_CASE("uniform distance basics") {
  const CadlagPath p = unit_step();
  CHECK(uniform_distance(p, p) == 0.0);
  CHECK(uniform_distance(p, p.shifted(0.25)) == 0.25);
  CHECK_THROWS_AS(
      uniform_distance(p, CadlagPath::constant(0.0, 1.0)),
      std::invalid_argument);
}

TEST_CASE("uniform distance is a metric on a common horizon") {
  CounterRng rng(2026, 10);
  for (int rep = 0; rep < 200; ++rep) {
    const CadlagPath f = random_path(rng, 2.0);
    const CadlagPath g = random_path(rng, 2.0);
    const CadlagPath h = random_path(rng, 2.0);
    const double fg = uniform_distance(f, g);
    const double gf = uniform_distance(g, f);
    CHECK(fg == gf);
    CHECK(uniform_distance(f, f) == 0.0);
    CHECK(uniform_distance(f, h) <= fg + uniform_distance(g, h) + kTol);
  }
}

TEST_CASE("jumps of the refined staircase") {
  // 0 before 1, then 1/2 + k/9 on thirds, then 1 from 2 on.
  std::vector<double> times{0.0};
  std::vector<double> values{0.0};
  for (int k = 0; k < 3; ++k) {
    times.push_back(1.0 + k / 3.0);
    values.push_back(0.5 + k / 9.0);
  }
  times.push_back(2.0);
  values.push_back(1.0);
  const CadlagPath y = CadlagPath::step(times, values, 3.0);

  const auto js = y.jumps();
  REQUIRE(js.size() == 4);
  CHECK(js[0].time == 1.0);
  CHECK(js[0].size == doctest::Approx(0.5).epsilon(kTol));
  CHECK(js[1].time == doctest::Approx(4.0 / 3.0).epsilon(kTol));
  CHECK(js[1].size == doctest::Approx(1.0 / 9.0).epsilon(kTol));
  CHECK(js[2].time == doctest::Approx(5.0 / 3.0).epsilon(kTol));
  CHECK(js[2].size == doctest::Approx(1.0 / 9.0).epsilon(kTol));
  CHECK(js[3].time == 2.0);
  // Direct evaluation: the last pre-jump value is 1/2 + 2/9 = 13/18, so the
  // final jump is 5/18.
  CHECK(js[3].size == doctest::Approx(5.0 / 18.0).epsilon(kTol));

  const CadlagPath flat = CadlagPath::linear(0.0, 1.0, 2.0);
  CHECK(flat.jumps().empty());
  const auto one = unit_step().jumps();
  REQUIRE(one.size() == 1);
  CHECK(one[0].time == 1.0);
  CHECK(one[0].size == 1.0);
}

TEST_CASE("normalization merges seamless pieces") {
  // Two constant halves of the same level collapse to one piece.
  const CadlagPath a({{0.0, SegmentKind::kConstant, 1.0, 0.0},
                      {1.0, SegmentKind::kConstant, 1.0, 0.0}},
                     1.0, 2.0);
  CHECK(a.segments().size() == 1);
  CHECK(a == CadlagPath::constant(1.0, 2.0));

  // A zero-slope linear piece is a constant piece.
  const CadlagPath b({{0.0, SegmentKind::kLinear, 1.0, 0.0}}, 1.0, 2.0);
  CHECK(b == CadlagPath::constant(1.0, 2.0));
}

TEST_CASE("serialization round-trips exactly") {
  CounterRng rng(2026, 11);
  for (int rep = 0; rep < 100; ++rep) {
    CadlagPath p = random_path(rng, 2.0);
    // Sprinkle in awkward decimals.
    p = p.shifted(1.0 / 3.0 + rng.next_uniform() * 1e-7);
    const CadlagPath back = path_from_string(path_to_string(p));
    CHECK(back == p);
  }
}

TEST_CASE("restriction truncates and re-evaluates the terminal") {
  const CadlagPath y = min_t_minus_1();
  const CadlagPath r = y.restricted(0.5);
  CHECK(r.horizon() == 0.5);
  CHECK(r.terminal() == -0.5);
  CHECK(r.value_at(0.25) == -0.75);
}

TEST_CASE("time change validation") {
  CHECK_THROWS_AS(TimeChange({{0.0, 0.0}, {1.0, 2.0}}),
                  std::invalid_argument);  // must fix the horizon
  CHECK_THROWS_AS(TimeChange({{0.0, 0.0}, {1.0, 0.5}, {0.5, 0.7}, {2.0, 2.0}}),
                  std::invalid_argument);  // not increasing
  const TimeChange lam({{0.0, 0.0}, {1.0, 0.9}, {2.0, 2.0}});
  CHECK(lam.distortion() == doctest::Approx(0.1).epsilon(kTol));
  CHECK(lam.inverse()(0.9) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(lam.preimage(0.9) == doctest::Approx(1.0).epsilon(kTol));
}
