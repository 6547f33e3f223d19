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

#include "exitflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "exitflow/first_passage.hpp"
#include "exitflow/rng.hpp"
#include "exitflow/skorokhod.hpp"

namespace exitflow {

namespace {

// Index-chunked parallel map; results keyed by index stay deterministic
// regardless of scheduling. The first worker exception resurfaces here.
void parallel_for(long count, int threads,
                  const std::function<void(long)>& fn) {
  if (threads <= 1 || count < 2) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<long>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (long i = w; i < count; i += workers) fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

CadlagPath sticking_path() {
  return CadlagPath({{0.0, SegmentKind::kLinear, -1.0, 1.0},
                     {1.0, SegmentKind::kConstant, 0.0, 0.0}},
                    0.0, 3.0);
}

CadlagPath two_step_path() {
  return CadlagPath::step({0.0, 1.0, 2.0}, {0.0, 0.5, 1.0}, 3.0);
}

CadlagPath staircase_path(long n) {
  if (n < 1) throw std::invalid_argument("staircase_path: n < 1");
  std::vector<double> times{0.0};
  std::vector<double> values{0.0};
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  for (long k = 0; k < n; ++k) {
    times.push_back(1.0 + static_cast<double>(k) / n);
    values.push_back(0.5 + static_cast<double>(k) / nn);
  }
  times.push_back(2.0);
  values.push_back(1.0);
  return CadlagPath::step(times, values, 3.0);
}

CadlagPath plateau_path(double u_star, long root_n, int quad_pieces) {
  if (quad_pieces < 1) throw std::invalid_argument("plateau_path: pieces < 1");
  std::vector<std::pair<double, double>> nodes;
  nodes.reserve(quad_pieces + 2);
  for (int j = 0; j <= quad_pieces; ++j) {
    const double t = static_cast<double>(j) / quad_pieces;
    nodes.emplace_back(t, u_star - (1.0 - t) * (1.0 - t));
  }
  if (root_n >= 1) {
    // Exact node where the +1/n nudge first reaches u_star: the square of
    // (1 - t) is exactly 1/n there, so pin the value rather than square.
    const double t_root = 1.0 - 1.0 / std::sqrt(static_cast<double>(root_n));
    if (t_root > 0.0 && t_root < 1.0)
      nodes.emplace_back(t_root, u_star - 1.0 / root_n);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](const auto& a, const auto& b) {
                            return a.first == b.first;
                          }),
              nodes.end());

  std::vector<PathSegment> segs;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double dt = nodes[i + 1].first - nodes[i].first;
    segs.push_back({nodes[i].first, SegmentKind::kLinear, nodes[i].second,
                    (nodes[i + 1].second - nodes[i].second) / dt});
  }
  segs.push_back({1.0, SegmentKind::kConstant, u_star, 0.0});
  segs.push_back({2.0, SegmentKind::kConstant, u_star + 1.0, 0.0});
  return CadlagPath(std::move(segs), u_star + 1.0, 3.0);
}

double SurdRadius::approx() const {
  return static_cast<double>(p) / q * std::sqrt(static_cast<double>(s));
}

void SurdRadius::validate() const {
  if (p < 1 || q < 1 || s < 1)
    throw std::invalid_argument("SurdRadius: need positive p, q, s");
  // Squarefree check keeps the rationality test honest.
  for (long f = 2; f * f <= s; ++f)
    if (s % (f * f) == 0)
      throw std::invalid_argument("SurdRadius: s must be squarefree");
  // 0 < r < 1  <=>  p^2 s < q^2.
  if (p * p * s >= q * q)
    throw std::invalid_argument("SurdRadius: radius must lie inside the disk");
}

bool SurdRadius::on_circle_of(long n) const {
  if (s > 1) return false;  // irrational radius never equals k/n
  // p/q == k/n for integer k <= n  <=>  q divides n p (k = n p / q < n).
  return (n * p) % q == 0;
}

CirclesResult circles_counterexample(long n, SurdRadius radius) {
  if (n < 1) throw std::invalid_argument("circles_counterexample: n < 1");
  radius.validate();
  CirclesResult out;
  out.n = n;
  out.radius = radius;
  out.dh_bound = 1.0 / n;
  out.dh_exact = 1.0 / (2.0 * n);  // the mid-gap between adjacent circles
  out.degenerate = radius.on_circle_of(n);
  out.t_circles = out.degenerate ? TimeValue(0.0) : TimeValue::infinity();
  out.t_disk = TimeValue(0.0);  // the path starts inside the closed disk
  return out;
}

double hausdorff_distance(const std::vector<Point>& a,
                          const std::vector<Point>& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("hausdorff_distance: empty set");
  const std::size_t d = a.front().size();
  for (const Point& p : a)
    if (p.size() != d)
      throw std::invalid_argument("hausdorff_distance: ragged set");
  for (const Point& p : b)
    if (p.size() != d)
      throw std::invalid_argument("hausdorff_distance: ragged set");

  auto one_sided = [d](const std::vector<Point>& from,
                       const std::vector<Point>& to) {
    double worst = 0.0;
    for (const Point& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : to) {
        double sq = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          sq += (p[k] - q[k]) * (p[k] - q[k]);
        best = std::min(best, sq);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

StickingResult sticking_example(long n) {
  if (n < 1) throw std::invalid_argument("sticking_example: n < 1");
  const CadlagPath y = sticking_path();
  const double eps = 1.0 / n;
  StickingResult out;
  out.n = n;
  out.tau_base = first_passage(y, 0.0);
  out.tau_down = first_passage(y.shifted(-eps), 0.0);
  out.tau_up = first_passage(y.shifted(eps), 0.0);
  return out;
}

std::vector<BernoulliRow> bernoulli_perturbation_sim(
    const std::vector<long>& n_values, long trials, std::uint64_t seed) {
  if (trials < 100)
    throw std::invalid_argument("bernoulli_perturbation_sim: trials < 100");
  const CadlagPath y = sticking_path();
  std::vector<BernoulliRow> rows;
  rows.reserve(n_values.size());
  for (long n : n_values) {
    if (n < 1) throw std::invalid_argument("bernoulli_perturbation_sim: n<1");
    const double eps = 1.0 / n;
    const TimeValue up_exit = first_passage(y.shifted(eps), 0.0);
    const TimeValue down_exit = first_passage(y.shifted(-eps), 0.0);
    const double expected_up = 1.0 - 1.0 / n;

    BernoulliRow row;
    row.n = n;
    row.trials = trials;
    row.expected_p_inf = 1.0 / n;
    row.three_sigma =
        3.0 * std::sqrt(row.expected_p_inf * (1.0 - row.expected_p_inf) /
                        static_cast<double>(trials));
    row.finite_exits_exact = true;

    CounterRng rng(seed, static_cast<std::uint64_t>(n));
    long infinite = 0;
    for (long trial = 0; trial < trials; ++trial) {
      const bool up = rng.next_bernoulli(1.0 - 1.0 / n);
      const TimeValue exit = up ? up_exit : down_exit;
      if (exit.infinite()) {
        ++infinite;
      } else {
        ++row.finite_exits;
        if (exit.seconds() != expected_up) row.finite_exits_exact = false;
      }
    }
    row.empirical_p_inf = static_cast<double>(infinite) / trials;
    rows.push_back(row);
  }
  return rows;
}

SharpnessResult sharpness_example(long n, double u_star) {
  if (n < 1) throw std::invalid_argument("sharpness_example: n < 1");
  const CadlagPath y = plateau_path(u_star, n);
  const double eps = 1.0 / n;
  SharpnessResult out;
  out.n = n;
  out.u_star = u_star;
  const TimeValue plus = first_passage(y.shifted(eps), u_star);
  const TimeValue minus = first_passage(y.shifted(-eps), u_star);
  if (plus.infinite() || minus.infinite())
    throw std::logic_error("sharpness_example: passage unexpectedly infinite");
  out.t_plus = plus.seconds();
  out.t_minus = minus.seconds();
  return out;
}

ProfileGapResult m1_vs_j1_example(long n) {
  if (n < 2) throw std::invalid_argument("m1_vs_j1_example: n < 2");
  const double u_lo = 0.25, u_hi = 0.75;
  ExitProfile prof_n = exit_profile(staircase_path(n), u_lo, u_hi);
  ExitProfile prof_limit = exit_profile(two_step_path(), u_lo, u_hi);
  const CadlagPath step_n = prof_n.finite_path();
  const CadlagPath step_limit = prof_limit.finite_path();
  ProfileGapResult out{n, prof_n, prof_limit, 0.0, 0.0};
  out.m1_upper = m1_upper_bound(MonotonePath(u_lo, step_n),
                                MonotonePath(u_lo, step_limit));
  out.j1_lower = j1_lower_bound_step(step_n, step_limit);
  return out;
}

namespace {

double draw_increment(CounterRng& rng, IncrementLaw law) {
  switch (law) {
    case IncrementLaw::kRademacher:
      return rng.next_sign();
    case IncrementLaw::kUniform:
      // Mean 0, variance 1 on [-sqrt(3), sqrt(3)].
      return (2.0 * rng.next_uniform() - 1.0) * 1.7320508075688772;
    case IncrementLaw::kStandardNormal:
      return rng.next_normal();
  }
  return 0.0;
}

}  // namespace

CadlagPath donsker_path(const RandomWalkSpec& spec, double horizon,
                        std::uint64_t sample_index) {
  if (spec.steps_per_unit < 1)
    throw std::invalid_argument("donsker_path: steps_per_unit < 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("donsker_path: horizon");
  const long n = spec.steps_per_unit;
  const double root_n = std::sqrt(static_cast<double>(n));

  CounterRng rng(spec.seed, sample_index);
  std::vector<double> times{0.0};
  std::vector<double> values{0.0};
  double sum = 0.0;
  for (long k = 1;; ++k) {
    const double t = static_cast<double>(k) / n;
    if (t > horizon) break;
    sum += draw_increment(rng, spec.law);
    times.push_back(t);
    values.push_back(sum / root_n);
  }
  return CadlagPath::step(times, values, horizon);
}

double brownian_passage_cdf(double level, double t) {
  if (t <= 0.0) return 0.0;
  const double x = level / std::sqrt(t);
  const double normal_cdf = 0.5 * std::erfc(x / 1.4142135623730951);
  return 2.0 * normal_cdf;  // 2 (1 - N(x)) == 2 N(-x)
}

DonskerExitResult donsker_exit_experiment(const RandomWalkSpec& spec,
                                          long samples, double level,
                                          double horizon, int threads) {
  if (samples < 100)
    throw std::invalid_argument("donsker_exit_experiment: samples < 100");
  const BarrierField boundary = BarrierField::affine(
      {BoundaryCurve::Family::kConstant, level, 0.0});

  DonskerExitResult out;
  out.n = spec.steps_per_unit;
  out.samples = samples;
  out.level = level;
  out.horizon = horizon;
  out.exits.resize(samples);
  parallel_for(samples, threads, [&](long i) {
    const CadlagPath walk =
        donsker_path(spec, horizon, static_cast<std::uint64_t>(i));
    out.exits[i] = exit_time(walk, boundary);
  });
  out.ecdf = Ecdf::from_samples(out.exits);
  out.ks = ks_statistic(out.ecdf,
                        [&](double t) { return brownian_passage_cdf(level, t); });
  out.ks_band = ks_band_95(samples);
  return out;
}

DonskerProfileResult donsker_profile_experiment(const RandomWalkSpec& spec,
                                                long samples, double u_lo,
                                                double u_hi, double level,
                                                double fine_dt, double horizon,
                                                int threads) {
  if (!(u_lo < u_hi))
    throw std::invalid_argument("donsker_profile_experiment: bad window");
  if (spec.law != IncrementLaw::kStandardNormal)
    throw std::invalid_argument(
        "donsker_profile_experiment: coupling needs the normal law");
  if (samples < 1)
    throw std::invalid_argument("donsker_profile_experiment: no samples");
  const long n = spec.steps_per_unit;
  const long walk_steps = std::lround(horizon * n);
  const long fine_steps = std::lround(horizon / fine_dt);
  if (walk_steps < 1 || fine_steps < walk_steps ||
      fine_steps % walk_steps != 0)
    throw std::invalid_argument(
        "donsker_profile_experiment: fine grid must refine the walk grid");
  const long agg = fine_steps / walk_steps;
  const double dt = horizon / fine_steps;
  const double root_dt = std::sqrt(dt);

  DonskerProfileResult out;
  out.n = n;
  out.samples = samples;
  out.u_lo = u_lo;
  out.u_hi = u_hi;
  out.per_sample.resize(samples);

  parallel_for(samples, threads, [&](long i) {
    CounterRng rng(spec.seed, static_cast<std::uint64_t>(i));
    std::vector<std::pair<double, double>> nodes;
    nodes.reserve(fine_steps + 1);
    nodes.emplace_back(0.0, 0.0);
    double w = 0.0;
    for (long j = 1; j <= fine_steps; ++j) {
      w += root_dt * rng.next_normal();
      const double t = (j == fine_steps) ? horizon : dt * j;
      nodes.emplace_back(t, w);
    }

    // The walk aggregates the same increments: its value at k/n is the fine
    // path's node there, rescaled by nothing (sqrt(n) cancels: sums of the
    // fine normals over a walk step are N(0, 1/n), matching xi_k / sqrt(n)).
    std::vector<double> times, values;
    times.reserve(walk_steps + 1);
    values.reserve(walk_steps + 1);
    times.push_back(0.0);
    values.push_back(0.0);
    for (long k = 1; k <= walk_steps; ++k) {
      times.push_back(nodes[k * agg].first);
      values.push_back(nodes[k * agg].second);
    }
    const CadlagPath walk =
        CadlagPath::step(times, values, horizon);
    const CadlagPath fine = CadlagPath::piecewise_linear(nodes);

    const ExitProfile walk_profile =
        exit_profile(walk.shifted(-level), u_lo, u_hi);
    const ExitProfile fine_profile =
        exit_profile(fine.shifted(-level), u_lo, u_hi);
    out.per_sample[i] = m1_upper_bound(walk_profile.compactified(),
                                       fine_profile.compactified());
  });
  out.mean_m1_upper = pairwise_sum(out.per_sample) / samples;
  return out;
}

}  // namespace exitflow
