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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "exitflow/barrier.hpp"
#include "exitflow/ecdf.hpp"
#include "exitflow/exit_profile.hpp"
#include "exitflow/experiments.hpp"
#include "exitflow/first_passage.hpp"
#include "exitflow/nt_verification.hpp"
#include "exitflow/path_io.hpp"
#include "exitflow/skorokhod.hpp"
#include "json.hpp"

namespace {

using exitflow::BarrierField;
using exitflow::BoundaryCurve;
using exitflow::CadlagPath;
using exitflow::TimeValue;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitInconclusive = 3;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string format = "json";
};

int resolve_threads() {
  const char* env = std::getenv("EXITFLOW_THREADS");
  if (env == nullptr)
    return static_cast<int>(std::thread::hardware_concurrency());
  const long v = std::strtol(env, nullptr, 10);
  if (v <= 0) return static_cast<int>(std::thread::hardware_concurrency());
  return static_cast<int>(v);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json time_value_json(TimeValue t) {
  if (t.infinite()) return "INF";
  return t.seconds();
}

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object())
      flatten(value, path, os);
    else
      os << path << "," << value.dump() << "\n";
  }
}

void emit_summary(const json& summary, const GlobalOptions& global) {
  if (global.format == "csv")
    flatten(summary, "", std::cout);
  else
    std::cout << summary.dump(2) << "\n";
}

std::ofstream open_output(const GlobalOptions& global,
                          const std::string& experiment, long n) {
  std::filesystem::create_directories(global.out_dir);
  const std::string name = experiment + "_" + std::to_string(n) + "_" +
                           std::to_string(global.seed) + ".csv";
  std::ofstream os(std::filesystem::path(global.out_dir) / name);
  if (!os) throw std::invalid_argument("cannot open output file " + name);
  return os;
}

// --- counterexample runners -------------------------------------------------

int run_circles(const GlobalOptions& global, long n, long p, long q, long s) {
  const exitflow::CirclesResult res =
      exitflow::circles_counterexample(n, {p, q, s});
  json summary{{"experiment", "circles"},
               {"n", res.n},
               {"radius",
                {{"p", p}, {"q", q}, {"s", s}, {"approx", res.radius.approx()}}},
               {"dh_bound", res.dh_bound},
               {"dh_exact", res.dh_exact},
               {"t_circles", time_value_json(res.t_circles)},
               {"t_disk", time_value_json(res.t_disk)},
               {"degenerate", res.degenerate}};
  emit_summary(summary, global);
  if (!global.out_dir.empty()) {
    auto os = open_output(global, "circles", n);
    os << "dh_bound,dh_exact,t_circles,t_disk,degenerate\n"
       << fmt17(res.dh_bound) << ',' << fmt17(res.dh_exact) << ','
       << res.t_circles.to_string() << ',' << res.t_disk.to_string() << ','
       << (res.degenerate ? 1 : 0) << "\n";
  }
  return kExitOk;
}

int run_sticking(const GlobalOptions& global, long n) {
  const exitflow::StickingResult res = exitflow::sticking_example(n);
  json summary{{"experiment", "sticking"},
               {"n", res.n},
               {"tau_base", time_value_json(res.tau_base)},
               {"tau_down", time_value_json(res.tau_down)},
               {"tau_up", time_value_json(res.tau_up)}};
  emit_summary(summary, global);
  if (!global.out_dir.empty()) {
    auto os = open_output(global, "sticking", n);
    os << "tau_base,tau_down,tau_up\n"
       << res.tau_base.to_string() << ',' << res.tau_down.to_string() << ','
       << res.tau_up.to_string() << "\n";
  }
  return kExitOk;
}

int run_bernoulli(const GlobalOptions& global, std::vector<long> ns,
                  long trials) {
  const auto rows =
      exitflow::bernoulli_perturbation_sim(ns, trials, global.seed);
  json table = json::array();
  for (const auto& row : rows) {
    table.push_back({{"n", row.n},
                     {"trials", row.trials},
                     {"empirical_p_inf", row.empirical_p_inf},
                     {"expected_p_inf", row.expected_p_inf},
                     {"three_sigma", row.three_sigma},
                     {"finite_exits", row.finite_exits},
                     {"finite_exits_exact", row.finite_exits_exact}});
  }
  json summary{
      {"experiment", "bernoulli"}, {"seed", global.seed}, {"rows", table}};
  emit_summary(summary, global);
  if (!global.out_dir.empty()) {
    auto os = open_output(global, "bernoulli", ns.empty() ? 0 : ns.front());
    os << "n,empirical_p_inf,expected_p_inf,three_sigma\n";
    for (const auto& row : rows)
      os << row.n << ',' << fmt17(row.empirical_p_inf) << ','
         << fmt17(row.expected_p_inf) << ',' << fmt17(row.three_sigma) << "\n";
  }
  return kExitOk;
}

int run_sharpness(const GlobalOptions& global, long n, double u_star) {
  const exitflow::SharpnessResult res = exitflow::sharpness_example(n, u_star);
  json summary{{"experiment", "sharpness"},
               {"n", res.n},
               {"u_star", res.u_star},
               {"t_plus", res.t_plus},
               {"t_minus", res.t_minus}};
  emit_summary(summary, global);
  return kExitOk;
}

int run_m1_vs_j1(const GlobalOptions& global, long n) {
  const exitflow::ProfileGapResult res = exitflow::m1_vs_j1_example(n);
  json summary{{"experiment", "m1-vs-j1"},
               {"n", res.n},
               {"m1_upper", res.m1_upper},
               {"j1_lower", res.j1_lower}};
  emit_summary(summary, global);
  if (!global.out_dir.empty()) {
    auto os = open_output(global, "m1-vs-j1", n);
    std::ostringstream buf;
    exitflow::write_profile_csv(buf, res.profile_n);
    os << buf.str();
  }
  return kExitOk;
}

// --- donsker runners ----------------------------------------------------------

exitflow::IncrementLaw parse_law(const std::string& name) {
  if (name == "rademacher") return exitflow::IncrementLaw::kRademacher;
  if (name == "uniform") return exitflow::IncrementLaw::kUniform;
  if (name == "normal") return exitflow::IncrementLaw::kStandardNormal;
  throw std::invalid_argument("unknown increment law: " + name);
}

int run_donsker_exit(const GlobalOptions& global, const std::string& law,
                     long n, long samples, double level, double horizon) {
  exitflow::RandomWalkSpec spec;
  spec.law = parse_law(law);
  spec.steps_per_unit = n;
  spec.seed = global.seed;
  const exitflow::DonskerExitResult res = exitflow::donsker_exit_experiment(
      spec, samples, level, horizon, resolve_threads());
  json summary{{"experiment", "donsker-exit"},
               {"law", law},
               {"n", res.n},
               {"samples", res.samples},
               {"seed", global.seed},
               {"level", res.level},
               {"horizon", res.horizon},
               {"ks_vs_analytic", res.ks},
               {"ks_band_95", res.ks_band},
               {"finite_exits", res.ecdf.finite_count()},
               {"infinite_exits", res.ecdf.infinite_count()}};
  emit_summary(summary, global);
  if (!global.out_dir.empty()) {
    auto os = open_output(global, "donsker-exit", n);
    os << "sample,tau\n";
    for (std::size_t i = 0; i < res.exits.size(); ++i)
      os << i << ',' << res.exits[i].to_string() << "\n";
  }
  return kExitOk;
}

int run_donsker_profile(const GlobalOptions& global, long n, long samples,
                        double u0, double u1, double level, double fine_dt,
                        double horizon) {
  exitflow::RandomWalkSpec spec;
  spec.law = exitflow::IncrementLaw::kStandardNormal;
  spec.steps_per_unit = n;
  spec.seed = global.seed;
  const exitflow::DonskerProfileResult res =
      exitflow::donsker_profile_experiment(spec, samples, u0, u1, level,
                                           fine_dt, horizon,
                                           resolve_threads());
  json summary{{"experiment", "donsker-profile"},
               {"n", res.n},
               {"samples", res.samples},
               {"seed", global.seed},
               {"u0", res.u_lo},
               {"u1", res.u_hi},
               {"fine_dt", fine_dt},
               {"mean_m1_upper", res.mean_m1_upper}};
  emit_summary(summary, global);
  if (!global.out_dir.empty()) {
    auto os = open_output(global, "donsker-profile", n);
    os << "sample,m1_upper\n";
    for (std::size_t i = 0; i < res.per_sample.size(); ++i)
      os << i << ',' << fmt17(res.per_sample[i]) << "\n";
  }
  return kExitOk;
}

// --- metric and profile runners -------------------------------------------------

int run_metrics_compare(const GlobalOptions& global, const std::string& a,
                        const std::string& b, int knots, int iters,
                        double bisection_tol) {
  const CadlagPath f = exitflow::load_path_file(a);
  const CadlagPath g = exitflow::load_path_file(b);
  const exitflow::J1SearchResult upper =
      exitflow::j1_upper_bound(f, g, knots, iters);

  json summary{{"experiment", "metrics-compare"}};
  if (f.is_nondecreasing(1e-12) && g.is_nondecreasing(1e-12))
    summary["m1_upper"] = exitflow::m1_upper_bound(
        exitflow::MonotonePath(0.0, f), exitflow::MonotonePath(0.0, g));
  else
    summary["m1_upper"] = nullptr;
  summary["j1_upper"] = upper.bound;
  if (f.is_step() && g.is_step())
    summary["j1_lower"] = exitflow::j1_lower_bound_step(f, g, bisection_tol);
  else
    summary["j1_lower"] = nullptr;
  json lambda = json::array();
  for (const auto& [s, v] : upper.lambda_knots) lambda.push_back({s, v});
  summary["lambda_knots"] = lambda;
  emit_summary(summary, global);
  return kExitOk;
}

int run_profile_compute(const GlobalOptions& global, const std::string& file,
                        double u0, double u1) {
  const CadlagPath y = exitflow::load_path_file(file);
  const exitflow::ExitProfile prof = exitflow::exit_profile(y, u0, u1);
  if (!global.out_dir.empty()) {
    auto os = open_output(
        global, "profile",
        static_cast<long>(prof.level_breakpoints().size()));
    exitflow::write_profile_csv(os, prof);
    json summary{{"experiment", "profile"},
                 {"u0", u0},
                 {"u1", u1},
                 {"breakpoints", prof.level_breakpoints().size()},
                 {"finite_on_window", prof.finite_on_window()}};
    emit_summary(summary, global);
  } else {
    exitflow::write_profile_csv(std::cout, prof);
  }
  return kExitOk;
}

// --- nt check -------------------------------------------------------------------

struct NtCheckOptions {
  int dim = 1;
  int sigma_cols = 1;
  std::vector<double> sigma{1.0};
  std::vector<double> drift;
  double box_radius = 10.0;
  std::string barrier = "affine";
  std::string g_family = "constant";
  double g_a = 1.0;
  double g_b = 0.0;
  std::string grid_file;
  std::string points_file;
  double horizon = 1.0;
  double eta = 0.1;
  double radius = 2.0;
  int time_cells = 32;
  int space_cells = 32;
  double c = 1.0;
};

exitflow::GridField load_grid_csv(const std::string& filename) {
  std::ifstream is(filename);
  if (!is) throw std::invalid_argument("cannot open grid file " + filename);
  std::string header;
  std::getline(is, header);
  const int cols =
      1 + static_cast<int>(std::count(header.begin(), header.end(), ','));
  const int dim = cols - 2;  // t, z..., value
  if (dim < 1 || dim > 2)
    throw std::invalid_argument("grid file must have 3 or 4 columns");

  struct Row {
    double t;
    double z[2];
    double value;
  };
  std::vector<Row> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Row row{};
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    row.t = std::stod(cell);
    for (int k = 0; k < dim; ++k) {
      std::getline(ls, cell, ',');
      row.z[k] = std::stod(cell);
    }
    std::getline(ls, cell, ',');
    row.value = std::stod(cell);
    rows.push_back(row);
  }

  exitflow::GridField grid;
  auto collect = [&rows](auto getter) {
    std::vector<double> axis;
    for (const Row& r : rows) axis.push_back(getter(r));
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    return axis;
  };
  grid.t_axis = collect([](const Row& r) { return r.t; });
  for (int k = 0; k < dim; ++k)
    grid.z_axes.push_back(collect([k](const Row& r) { return r.z[k]; }));

  std::size_t total = grid.t_axis.size();
  for (const auto& axis : grid.z_axes) total *= axis.size();
  if (rows.size() != total)
    throw std::invalid_argument("grid file does not cover a full lattice");
  grid.values.assign(total, 0.0);
  auto index_of = [](const std::vector<double>& axis, double x) {
    return static_cast<std::size_t>(
        std::lower_bound(axis.begin(), axis.end(), x) - axis.begin());
  };
  for (const Row& r : rows) {
    std::size_t idx = index_of(grid.t_axis, r.t);
    for (int k = 0; k < dim; ++k)
      idx = idx * grid.z_axes[k].size() + index_of(grid.z_axes[k], r.z[k]);
    grid.values[idx] = r.value;
  }
  grid.validate();
  return grid;
}

exitflow::SpaceTimeSet load_points_csv(const std::string& filename) {
  std::ifstream is(filename);
  if (!is) throw std::invalid_argument("cannot open points file " + filename);
  std::string header;
  std::getline(is, header);
  exitflow::SpaceTimeSet cloud;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    cloud.times.push_back(std::stod(cell));
    exitflow::Point z;
    while (std::getline(ls, cell, ',')) z.push_back(std::stod(cell));
    cloud.points.push_back(std::move(z));
  }
  return cloud;
}

BarrierField build_barrier(const NtCheckOptions& opt) {
  if (opt.barrier == "affine") {
    BoundaryCurve g;
    if (opt.g_family == "constant")
      g.family = BoundaryCurve::Family::kConstant;
    else if (opt.g_family == "linear")
      g.family = BoundaryCurve::Family::kLinear;
    else if (opt.g_family == "sqrt")
      g.family = BoundaryCurve::Family::kSqrt;
    else
      throw std::invalid_argument("unknown boundary family " + opt.g_family);
    g.a = opt.g_a;
    g.b = opt.g_b;
    return BarrierField::affine(g);
  }
  if (opt.barrier == "grid") {
    if (opt.grid_file.empty())
      throw std::invalid_argument("grid barrier needs --grid-file");
    return BarrierField::grid(load_grid_csv(opt.grid_file));
  }
  if (opt.barrier == "distance") {
    if (opt.points_file.empty())
      throw std::invalid_argument("distance barrier needs --points-file");
    return exitflow::canonical_barrier(load_points_csv(opt.points_file));
  }
  throw std::invalid_argument("unknown barrier kind " + opt.barrier);
}

int run_nt_check(const GlobalOptions& global, const NtCheckOptions& opt) {
  exitflow::DiffusionSpec diffusion;
  diffusion.dim = opt.dim;
  diffusion.sigma =
      exitflow::MatrixField::constant(opt.dim, opt.sigma_cols, opt.sigma);
  std::vector<double> drift = opt.drift;
  if (drift.empty()) drift.assign(opt.dim, 0.0);
  diffusion.drift = exitflow::MatrixField::constant(opt.dim, 1, drift);
  diffusion.box_radius = opt.box_radius;

  exitflow::NeighborhoodSpec window;
  window.horizon = opt.horizon;
  window.eta = opt.eta;
  window.radius = opt.radius;
  window.time_cells = opt.time_cells;
  window.space_cells = opt.space_cells;

  const exitflow::RouteBReport report = exitflow::route_b_noncharacteristic(
      diffusion, build_barrier(opt), window, opt.c);

  json summary{{"experiment", "nt-check"},
               {"status", exitflow::to_string(report.status)},
               {"c", report.threshold},
               {"min_norm", report.min_norm},
               {"band_points", report.band_points},
               {"time_cells", report.time_cells},
               {"space_cells", report.space_cells},
               {"grad_step", report.grad_step}};
  if (report.band_points > 0) {
    summary["argmin_t"] = report.argmin_t;
    summary["argmin_x"] = report.argmin_x;
  }
  emit_summary(summary, global);
  return report.status == exitflow::RouteBStatus::kInconclusive
             ? kExitInconclusive
             : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exitflow: exact first-passage and exit-profile computation on "
      "piecewise paths, graph-metric bounds for monotone profiles, "
      "non-tangency certificates, and random-walk scaling experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file mirroring the flags");
  app.allow_config_extras(false);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "base seed for all random draws");
  app.add_option("--out", global.out_dir,
                 "directory for per-sample CSV outputs");
  app.add_option("--format", global.format, "summary format")
      ->check(CLI::IsMember({"json", "csv"}));

  int exit_code = kExitOk;

  // counterexample ------------------------------------------------------------
  auto* cex = app.add_subcommand(
      "counterexample", "closed-form demonstrations with exact answers");
  cex->require_subcommand(1);

  auto* circles = cex->add_subcommand(
      "circles",
      "hitting times of concentric-circle set approximations versus the "
      "disk: set convergence without exit-time convergence");
  long circles_n = 10;
  long rad_p = 1, rad_q = 2, rad_s = 2;
  circles->add_option("--n", circles_n, "number of circle gaps");
  circles->add_option("--radius-p", rad_p, "radius numerator");
  circles->add_option("--radius-q", rad_q, "radius denominator");
  circles->add_option("--radius-s", rad_s,
                      "squarefree part under the root; 1 means rational");
  circles->callback(
      [&] { exit_code = run_circles(global, circles_n, rad_p, rad_q, rad_s); });

  auto* sticking = cex->add_subcommand(
      "sticking",
      "a path that touches the boundary and sticks: exit times under "
      "up/down nudges of size 1/n");
  long sticking_n = 10;
  sticking->add_option("--n", sticking_n, "nudge size is 1/n");
  sticking->callback([&] { exit_code = run_sticking(global, sticking_n); });

  auto* bernoulli = cex->add_subcommand(
      "bernoulli",
      "random up/down nudges of the sticking path: the exit disappears "
      "with probability 1/n");
  std::vector<long> bern_ns{2, 10, 100};
  long bern_trials = 10000;
  bernoulli->add_option("--n-list", bern_ns, "values of n")->delimiter(',');
  bernoulli->add_option("--trials", bern_trials, "trials per n");
  bernoulli->callback(
      [&] { exit_code = run_bernoulli(global, bern_ns, bern_trials); });

  auto* sharpness = cex->add_subcommand(
      "sharpness",
      "a plateau path where up/down nudges of size 1/n move the passage to "
      "1 - 1/sqrt(n) versus 2");
  long sharp_n = 4;
  double sharp_u = 0.5;
  sharpness->add_option("--n", sharp_n, "nudge size is 1/n");
  sharpness->add_option("--u-star", sharp_u, "plateau level");
  sharpness->callback(
      [&] { exit_code = run_sharpness(global, sharp_n, sharp_u); });

  auto* m1j1 = cex->add_subcommand(
      "m1-vs-j1",
      "staircase exit profiles: the completed-graph bound collapses while "
      "the jump-matching lower bound stays apart");
  long m1j1_n = 10;
  m1j1->add_option("--n", m1j1_n, "staircase steps");
  m1j1->callback([&] { exit_code = run_m1_vs_j1(global, m1j1_n); });

  // donsker ---------------------------------------------------------------------
  auto* donsker =
      app.add_subcommand("donsker", "rescaled random-walk exit experiments");
  donsker->require_subcommand(1);

  auto* dexit = donsker->add_subcommand(
      "exit",
      "exit times of the rescaled walk across a constant level, compared "
      "with the closed-form passage law of the limit");
  std::string dexit_law = "rademacher";
  long dexit_n = 4096, dexit_samples = 5000;
  double dexit_level = 1.0, dexit_horizon = 2.0;
  dexit->add_option("--law", dexit_law, "increment law")
      ->check(CLI::IsMember({"rademacher", "uniform", "normal"}));
  dexit->add_option("--n", dexit_n, "walk steps per unit time");
  dexit->add_option("--samples", dexit_samples, "independent walks");
  dexit->add_option("--level", dexit_level, "constant boundary level");
  dexit->add_option("--horizon", dexit_horizon, "time horizon");
  dexit->callback([&] {
    exit_code = run_donsker_exit(global, dexit_law, dexit_n, dexit_samples,
                                 dexit_level, dexit_horizon);
  });

  auto* dprof = donsker->add_subcommand(
      "profile",
      "level-indexed exit profiles of the walk coupled to its own fine-grid "
      "limit path; mean completed-graph gap after compactification");
  long dprof_n = 4096, dprof_samples = 500;
  double dprof_u0 = 0.5, dprof_u1 = 1.5, dprof_level = 0.0;
  double dprof_fine_dt = 2.0 / 16384.0, dprof_horizon = 2.0;
  dprof->add_option("--n", dprof_n, "walk steps per unit time");
  dprof->add_option("--samples", dprof_samples, "independent walks");
  dprof->add_option("--u0", dprof_u0, "lowest level");
  dprof->add_option("--u1", dprof_u1, "highest level");
  dprof->add_option("--level", dprof_level, "boundary baseline");
  dprof->add_option("--fine-dt", dprof_fine_dt, "fine grid step");
  dprof->add_option("--horizon", dprof_horizon, "time horizon");
  dprof->callback([&] {
    exit_code = run_donsker_profile(global, dprof_n, dprof_samples, dprof_u0,
                                    dprof_u1, dprof_level, dprof_fine_dt,
                                    dprof_horizon);
  });

  // metrics ---------------------------------------------------------------------
  auto* metrics = app.add_subcommand("metrics", "path metric bounds");
  metrics->require_subcommand(1);
  auto* compare = metrics->add_subcommand(
      "compare",
      "time-change search upper bound, certified step lower bound, and the "
      "completed-graph bound for monotone inputs");
  std::string cmp_a, cmp_b;
  int cmp_knots = 8, cmp_iters = 3;
  double cmp_tol = 1e-4;
  compare->add_option("--a", cmp_a, "first path file")->required();
  compare->add_option("--b", cmp_b, "second path file")->required();
  compare->add_option("--knots", cmp_knots, "movable time-change knots");
  compare->add_option("--iters", cmp_iters, "descent sweeps");
  compare->add_option("--bisection-tol", cmp_tol,
                      "lower-bound bisection tolerance");
  compare->callback([&] {
    exit_code = run_metrics_compare(global, cmp_a, cmp_b, cmp_knots,
                                    cmp_iters, cmp_tol);
  });

  // profile ---------------------------------------------------------------------
  auto* profile = app.add_subcommand("profile", "exit-time profiles");
  profile->require_subcommand(1);
  auto* compute = profile->add_subcommand(
      "compute", "level-to-passage-time profile of a stored scalar path");
  std::string prof_file;
  double prof_u0 = 0.0, prof_u1 = 1.0;
  compute->add_option("--path", prof_file, "path file")->required();
  compute->add_option("--u0", prof_u0, "lowest level");
  compute->add_option("--u1", prof_u1, "highest level");
  compute->callback(
      [&] { exit_code = run_profile_compute(global, prof_file, prof_u0, prof_u1); });

  // nt --------------------------------------------------------------------------
  auto* nt = app.add_subcommand("nt", "non-tangency certificates");
  nt->require_subcommand(1);
  auto* check = nt->add_subcommand(
      "check",
      "lattice certificate that the noise does not degenerate along the "
      "boundary normal inside the band |field| <= eta");
  NtCheckOptions ntopt;
  check->add_option("--dim", ntopt.dim, "state dimension");
  check->add_option("--sigma", ntopt.sigma, "noise matrix, row-major")
      ->delimiter(',');
  check->add_option("--sigma-cols", ntopt.sigma_cols,
                    "noise matrix column count");
  check->add_option("--drift", ntopt.drift, "drift vector")->delimiter(',');
  check->add_option("--box-radius", ntopt.box_radius,
                    "coefficient validity box");
  check->add_option("--barrier", ntopt.barrier, "barrier kind")
      ->check(CLI::IsMember({"affine", "grid", "distance"}));
  check->add_option("--g-family", ntopt.g_family, "boundary family")
      ->check(CLI::IsMember({"constant", "linear", "sqrt"}));
  check->add_option("--g-a", ntopt.g_a, "boundary coefficient a");
  check->add_option("--g-b", ntopt.g_b, "boundary coefficient b");
  check->add_option("--grid-file", ntopt.grid_file,
                    "CSV lattice: t,z...,value");
  check->add_option("--points-file", ntopt.points_file,
                    "CSV point cloud: t,z...");
  check->add_option("--horizon", ntopt.horizon, "scan horizon");
  check->add_option("--eta", ntopt.eta, "band half-width");
  check->add_option("--radius", ntopt.radius, "spatial box radius");
  check->add_option("--time-cells", ntopt.time_cells, "lattice cells in t");
  check->add_option("--space-cells", ntopt.space_cells,
                    "lattice cells per space axis");
  check->add_option("--c", ntopt.c, "required lower bound");
  check->callback([&] { exit_code = run_nt_check(global, ntopt); });

  // Global flags may appear after the subcommand name.
  const std::function<void(CLI::App*)> enable_fallthrough =
      [&enable_fallthrough](CLI::App* node) {
        for (CLI::App* sub : node->get_subcommands({})) {
          sub->fallthrough();
          enable_fallthrough(sub);
        }
      };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return exit_code;
}
