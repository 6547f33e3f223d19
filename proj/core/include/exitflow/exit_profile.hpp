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

#ifndef EXITFLOW_EXIT_PROFILE_HPP_
#define EXITFLOW_EXIT_PROFILE_HPP_

#include <iosfwd>
#include <vector>

#include "exitflow/cadlag_path.hpp"
#include "exitflow/time_value.hpp"

namespace exitflow {

class MonotonePath;

// One increase of the running maximum: from level `from` to level `to`,
// starting at `time`; instantaneous when `duration` is 0, otherwise linear.
struct ProfileRise {
  double from = 0.0;
  double to = 0.0;
  double time = 0.0;
  double duration = 0.0;
};

// The monotone map from barrier level u to the first time the path reaches
// or exceeds u, on a level window [u_lo, u_hi]. Stored exactly through the
// rises of the path's running maximum, so evaluation agrees with
// first_passage at every level, including the levels where the profile
// jumps. Values are infinite above the path's global maximum.
//
// As an element of the cadlag space over levels (for metric work) the
// profile is exported right-continuously; that view and the raw evaluation
// trace the same completed graph.
class ExitProfile {
 public:
  ExitProfile(double u_lo, double u_hi, double base_level,
              std::vector<ProfileRise> rises, double path_horizon);

  double level_lo() const { return u_lo_; }
  double level_hi() const { return u_hi_; }
  double max_level() const;
  double path_horizon() const { return path_horizon_; }

  // Exact inf{t : running max >= u}; equals first_passage of the source path.
  TimeValue value_at(double u) const;

  bool finite_on_window() const;

  // Level breakpoints of the right-continuous view, clamped to the window.
  std::vector<double> level_breakpoints() const;

  // Right-continuous piecewise view over the window as a path in the level
  // variable (levels shifted to start at 0). Requires finite values on the
  // whole window.
  CadlagPath finite_path() const;

  // The profile mapped through t/(1+t), as a monotone path on the window;
  // always well defined, with infinite stretches pinned at 1. Linear rises
  // turn into `pieces_per_rise` chips with exact nodes.
  MonotonePath compactified(int pieces_per_rise = 16) const;

  const std::vector<ProfileRise>& rises() const { return rises_; }

 private:
  double u_lo_, u_hi_;
  double base_level_;  // running max at time 0
  std::vector<ProfileRise> rises_;
  double path_horizon_;
};

// The profile of a scalar path on [u_lo, u_hi], computed from the exact
// running maximum.
ExitProfile exit_profile(const CadlagPath& y, double u_lo, double u_hi);

// CSV rows (u_breakpoint, tau_value_or_INF) over the window.
void write_profile_csv(std::ostream& os, const ExitProfile& profile);

}  // namespace exitflow

#endif  // EXITFLOW_EXIT_PROFILE_HPP_
