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

#ifndef EXITFLOW_EXPERIMENTS_HPP_
#define EXITFLOW_EXPERIMENTS_HPP_

#include <cstdint>
#include <vector>

#include "exitflow/barrier.hpp"
#include "exitflow/cadlag_path.hpp"
#include "exitflow/ecdf.hpp"
#include "exitflow/exit_profile.hpp"
#include "exitflow/time_value.hpp"

namespace exitflow {

// ---------------------------------------------------------------------------
// Closed-form demonstration paths.

// min(t - 1, 0) on [0, 3]: reaches 0 at t = 1 and sticks there.
CadlagPath sticking_path();

// Two steps: 0 before 1, 1/2 on [1, 2), 1 from 2 on; horizon 3.
CadlagPath two_step_path();

// The staircase refinement of the two-step path: 1/2 + k/n^2 on
// [1 + k/n, 1 + (k+1)/n) for k = 0..n-1, then 1 from 2 on; horizon 3.
CadlagPath staircase_path(long n);

// Rises as u_star - (1 - t)^2 on [0, 1) (concave chips with an exact node at
// 1 - 1/sqrt(n) when requested), sits flat at u_star on [1, 2), then jumps to
// u_star + 1; horizon 3.
CadlagPath plateau_path(double u_star, long root_n = 0,
                        int quad_pieces = 256);

// ---------------------------------------------------------------------------
// Concentric circles versus the disk.

// A radius p/q * sqrt(s) with s squarefree; irrational exactly when s > 1.
struct SurdRadius {
  long p = 1;
  long q = 2;
  long s = 2;

  double approx() const;
  bool rational() const { return s == 1; }
  void validate() const;
  // Whether the radius equals k/n for some integer 0 <= k <= n.
  bool on_circle_of(long n) const;
};

struct CirclesResult {
  long n = 0;
  SurdRadius radius;
  double dh_bound = 0.0;    // 1/n
  double dh_exact = 0.0;    // 1/(2n), the mid-gap distance
  TimeValue t_circles;      // hitting time of the circle union
  TimeValue t_disk;         // hitting time of the disk
  bool degenerate = false;  // the radius sits on one of the circles
};

// Hitting times of the n-circle approximation versus the unit disk for a
// path circling at the given radius, with the exact and bounding Hausdorff
// gaps between the two sets. Exact integer arithmetic decides whether the
// radius meets any circle.
CirclesResult circles_counterexample(long n, SurdRadius radius);

// Exact max-min scan between finite point clouds.
double hausdorff_distance(const std::vector<Point>& a,
                          const std::vector<Point>& b);

// ---------------------------------------------------------------------------
// Sticking path perturbations.

struct StickingResult {
  long n = 0;
  TimeValue tau_base;  // 1
  TimeValue tau_down;  // never exits
  TimeValue tau_up;    // 1 - 1/n
};

StickingResult sticking_example(long n);

struct BernoulliRow {
  long n = 0;
  long trials = 0;
  double empirical_p_inf = 0.0;
  double expected_p_inf = 0.0;  // 1/n
  double three_sigma = 0.0;     // binomial 3-sigma bar at 1/n
  long finite_exits = 0;
  bool finite_exits_exact = false;  // every finite exit equals 1 - 1/n
};

// Randomly nudges the sticking path up (probability 1 - 1/n) or down by 1/n
// and tallies how often the exit disappears.
std::vector<BernoulliRow> bernoulli_perturbation_sim(
    const std::vector<long>& n_values, long trials, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Plateau sharpness.

struct SharpnessResult {
  long n = 0;
  double u_star = 0.0;
  double t_plus = 0.0;   // passage of the +1/n nudge: 1 - 1/sqrt(n)
  double t_minus = 0.0;  // passage of the -1/n nudge: 2
};

SharpnessResult sharpness_example(long n, double u_star = 0.5);

// ---------------------------------------------------------------------------
// Staircase profiles: where the graph metrics separate.

struct ProfileGapResult {
  long n = 0;
  ExitProfile profile_n;
  ExitProfile profile_limit;
  double m1_upper = 0.0;
  double j1_lower = 0.0;
};

// Profiles of the staircase and two-step paths on [1/4, 3/4], with the
// canonical-trace upper bound and the certified step lower bound between
// them.
ProfileGapResult m1_vs_j1_example(long n);

// ---------------------------------------------------------------------------
// Random-walk scaling limit.

enum class IncrementLaw { kRademacher, kUniform, kStandardNormal };

struct RandomWalkSpec {
  IncrementLaw law = IncrementLaw::kRademacher;
  long steps_per_unit = 256;  // walk steps per unit of model time
  std::uint64_t seed = 1;
};

// The rescaled walk: partial sums of standardized increments read at floor
// (n t) and divided by sqrt(n), as a pure step path on [0, horizon].
// Deterministic in (seed, sample_index).
CadlagPath donsker_path(const RandomWalkSpec& spec, double horizon,
                        std::uint64_t sample_index = 0);

struct DonskerExitResult {
  long n = 0;
  long samples = 0;
  double level = 0.0;
  double horizon = 0.0;
  Ecdf ecdf;
  double ks = 0.0;         // against the reflection-principle law
  double ks_band = 0.0;    // 95% band width for this sample count
  std::vector<TimeValue> exits;
};

// Exit times of the rescaled walk across a constant level, compared with the
// closed-form first-passage law of the limit: 2 (1 - N(level / sqrt(t))).
DonskerExitResult donsker_exit_experiment(const RandomWalkSpec& spec,
                                          long samples, double level,
                                          double horizon, int threads = 1);

// The reflection-principle cdf P(passage <= t) for a constant level.
double brownian_passage_cdf(double level, double t);

struct DonskerProfileResult {
  long n = 0;
  long samples = 0;
  double u_lo = 0.0, u_hi = 0.0;
  double mean_m1_upper = 0.0;
  std::vector<double> per_sample;
};

// Couples each walk to the piecewise-linear Brownian path built from the
// same normal increments on a fine grid, computes both exit profiles on
// [u_lo, u_hi], compactifies them, and averages the canonical-trace gap.
// Requires the standard normal law (the coupling aggregates fine normals).
DonskerProfileResult donsker_profile_experiment(const RandomWalkSpec& spec,
                                                long samples, double u_lo,
                                                double u_hi, double level,
                                                double fine_dt, double horizon,
                                                int threads = 1);

}  // namespace exitflow

#endif  // EXITFLOW_EXPERIMENTS_HPP_
