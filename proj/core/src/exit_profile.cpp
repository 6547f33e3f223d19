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

#include "exitflow/exit_profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "exitflow/first_passage.hpp"
#include "exitflow/skorokhod.hpp"

namespace exitflow {

ExitProfile::ExitProfile(double u_lo, double u_hi, double base_level,
                         std::vector<ProfileRise> rises, double path_horizon)
    : u_lo_(u_lo),
      u_hi_(u_hi),
      base_level_(base_level),
      rises_(std::move(rises)),
      path_horizon_(path_horizon) {
  if (!(u_lo_ < u_hi_))
    throw std::invalid_argument("ExitProfile: need u_lo < u_hi");
  double level = base_level_;
  double time = 0.0;
  for (const ProfileRise& r : rises_) {
    if (r.from != level || !(r.to > r.from) || r.time < time ||
        r.duration < 0.0)
      throw std::invalid_argument("ExitProfile: rises out of order");
    level = r.to;
    time = r.time + r.duration;
  }
}

double ExitProfile::max_level() const {
  return rises_.empty() ? base_level_ : rises_.back().to;
}

TimeValue ExitProfile::value_at(double u) const {
  if (u < u_lo_ || u > u_hi_)
    throw std::out_of_range("ExitProfile: level outside the window");
  if (u <= base_level_) return TimeValue(0.0);
  for (const ProfileRise& r : rises_) {
    if (u > r.to) continue;
    // u in (r.from, r.to]
    if (r.duration == 0.0) return TimeValue(r.time);
    return TimeValue(r.time + (u - r.from) / (r.to - r.from) * r.duration);
  }
  return TimeValue::infinity();
}

bool ExitProfile::finite_on_window() const {
  // Right-continuity needs headroom above the window; at u == max_level the
  // right-continuous value is already infinite.
  return max_level() > u_hi_;
}

std::vector<double> ExitProfile::level_breakpoints() const {
  std::vector<double> cuts;
  cuts.push_back(u_lo_);
  for (const ProfileRise& r : rises_) {
    if (r.from > u_lo_ && r.from < u_hi_) cuts.push_back(r.from);
    if (r.to > u_lo_ && r.to < u_hi_) cuts.push_back(r.to);
  }
  const double top = max_level();
  if (base_level_ > u_lo_ && base_level_ < u_hi_ && cuts.back() != base_level_)
    cuts.push_back(base_level_);
  if (top > u_lo_ && top < u_hi_) cuts.push_back(top);
  cuts.push_back(u_hi_);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

namespace {

// inf{t : running max > u}: the right-continuous modification of the
// profile. Infinite at and above the path's maximum.
TimeValue tau_right(const ExitProfile& p, double u) {
  if (u < p.max_level() && p.rises().empty()) return TimeValue(0.0);
  for (const ProfileRise& r : p.rises()) {
    if (u < r.from) return TimeValue(0.0);  // below the base level
    if (u >= r.to) continue;
    if (r.duration == 0.0 || u <= r.from) return TimeValue(r.time);
    return TimeValue(r.time + (u - r.from) / (r.to - r.from) * r.duration);
  }
  return TimeValue::infinity();
}

// Builds the right-continuous level-indexed path over [u_lo, u_hi], applying
// the compactification t/(1+t) when requested and chipping linear rises into
// `pieces` chips where the compactification bends them.
CadlagPath profile_view(const ExitProfile& p, bool compact, int pieces) {
  const double u_lo = p.level_lo();
  const double u_hi = p.level_hi();
  const double width = u_hi - u_lo;
  auto map_time = [compact](double t) {
    return compact ? t / (1.0 + t) : t;
  };

  std::vector<PathSegment> segs;
  auto emit_constant = [&](double from, double to, double value) {
    if (to <= from) return;
    segs.push_back({from - u_lo, SegmentKind::kConstant, value, 0.0});
  };
  auto emit_linear = [&](double from, double to, double t0, double t1) {
    // Times t0 at level `from` rising to t1 at level `to`.
    if (to <= from) return;
    if (!compact) {
      segs.push_back({from - u_lo, SegmentKind::kLinear, t0,
                      (t1 - t0) / (to - from)});
      return;
    }
    for (int j = 0; j < pieces; ++j) {
      const double ua = from + (to - from) * j / pieces;
      const double ub = from + (to - from) * (j + 1) / pieces;
      const double va = map_time(t0 + (t1 - t0) * j / pieces);
      const double vb = map_time(t0 + (t1 - t0) * (j + 1) / pieces);
      segs.push_back(
          {ua - u_lo, SegmentKind::kLinear, va, (vb - va) / (ub - ua)});
    }
  };

  const double top = p.max_level();
  double cursor = u_lo;
  // Base stretch: levels below the first rise read 0.
  const double base_top = p.rises().empty() ? top : p.rises().front().from;
  if (cursor < std::min(base_top, u_hi)) {
    emit_constant(cursor, std::min(base_top, u_hi), map_time(0.0));
    cursor = std::min(base_top, u_hi);
  }
  for (const ProfileRise& r : p.rises()) {
    if (cursor >= u_hi) break;
    const double lo = std::max(r.from, cursor);
    const double hi = std::min(r.to, u_hi);
    if (hi <= lo) continue;
    if (r.duration == 0.0) {
      emit_constant(lo, hi, map_time(r.time));
    } else {
      const double rate = r.duration / (r.to - r.from);
      const double t_lo = r.time + (lo - r.from) * rate;
      const double t_hi = r.time + (hi - r.from) * rate;
      emit_linear(lo, hi, t_lo, t_hi);
    }
    cursor = hi;
  }
  if (cursor < u_hi) {
    // Tail at and above the path's maximum: never reached.
    if (!compact)
      throw std::domain_error("ExitProfile: infinite stretch in finite view");
    emit_constant(cursor, u_hi, 1.0);
  }
  const TimeValue top_value = tau_right(p, u_hi);
  double terminal;
  if (top_value.infinite()) {
    if (!compact)
      throw std::domain_error("ExitProfile: infinite stretch in finite view");
    terminal = 1.0;
  } else {
    terminal = map_time(top_value.seconds());
  }
  return CadlagPath(std::move(segs), terminal, width);
}

}  // namespace

CadlagPath ExitProfile::finite_path() const {
  if (!finite_on_window())
    throw std::domain_error("ExitProfile: window reaches the path maximum");
  return profile_view(*this, false, 1);
}

MonotonePath ExitProfile::compactified(int pieces_per_rise) const {
  if (pieces_per_rise < 1)
    throw std::invalid_argument("ExitProfile: pieces_per_rise < 1");
  return MonotonePath(u_lo_, profile_view(*this, true, pieces_per_rise));
}

ExitProfile exit_profile(const CadlagPath& y, double u_lo, double u_hi) {
  if (!(u_lo < u_hi))
    throw std::invalid_argument("exit_profile: need u_lo < u_hi");

  std::vector<ProfileRise> rises;
  const auto& segs = y.segments();
  double max_level = y.value_at(0.0);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const PathSegment& s = segs[i];
    const double seg_end =
        (i + 1 < segs.size()) ? segs[i + 1].start : y.horizon();
    if (s.value > max_level) {
      rises.push_back({max_level, s.value, s.start, 0.0});
      max_level = s.value;
    }
    if (s.kind == SegmentKind::kLinear && s.slope > 0.0) {
      const double end_limit = s.value + s.slope * (seg_end - s.start);
      if (end_limit > max_level) {
        // The running max follows the path from where it first exceeds the
        // old record; the record value at the open right end is attained by
        // the max at seg_end itself.
        const double start_time =
            s.value >= max_level ? s.start
                                 : s.start + (max_level - s.value) / s.slope;
        rises.push_back(
            {max_level, end_limit, start_time, seg_end - start_time});
        max_level = end_limit;
      }
    }
  }
  if (y.terminal() > max_level) {
    rises.push_back({max_level, y.terminal(), y.horizon(), 0.0});
    max_level = y.terminal();
  }
  return ExitProfile(u_lo, u_hi, y.value_at(0.0), std::move(rises),
                     y.horizon());
}

void write_profile_csv(std::ostream& os, const ExitProfile& profile) {
  os << "u,tau\n";
  char buf[40];
  for (double u : profile.level_breakpoints()) {
    std::snprintf(buf, sizeof(buf), "%.17g", u);
    os << buf << ',' << profile.value_at(u).to_string() << "\n";
  }
}

}  // namespace exitflow
