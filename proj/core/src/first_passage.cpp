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

#include "exitflow/first_passage.hpp"

#include <cmath>
#include <stdexcept>

namespace exitflow {

TimeValue first_passage(const CadlagPath& y, double level) {
  const auto& segs = y.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const PathSegment& s = segs[i];
    if (s.value >= level) return TimeValue(s.start);
    if (s.kind == SegmentKind::kLinear && s.slope > 0.0) {
      const double end = (i + 1 < segs.size()) ? segs[i + 1].start : y.horizon();
      const double root = s.start + (level - s.value) / s.slope;
      // The piece is right-open: reaching the level exactly at its end is a
      // left limit, not an attained value; the next piece decides.
      if (root < end) return TimeValue(root);
    }
  }
  if (y.terminal() >= level) return TimeValue(y.horizon());
  return TimeValue::infinity();
}

TimeValue exit_time(const CadlagPath& x, const BarrierField& field,
                    int resolution) {
  return first_passage(scalarize(x, field, resolution), 0.0);
}

TimeValue exit_time(const VectorPath& x, const BarrierField& field,
                    int resolution) {
  return first_passage(scalarize(x, field, resolution), 0.0);
}

double compactify(TimeValue t) {
  if (t.infinite()) return 1.0;
  const double v = t.seconds();
  return v / (1.0 + v);
}

namespace {

// A time in (after, after + eps] where y strictly exceeds `level`, if the
// local structure provides one. Candidate times are piece boundaries,
// midpoints, and midpoints of interior level-crossing roots; an excess
// region of a piecewise-linear path always contains one of them.
std::optional<double> overshoot_point(const CadlagPath& y, double level,
                                      double after, double eps) {
  const double hi = std::min(after + eps, y.horizon());
  if (hi <= after) return std::nullopt;

  auto good = [&](double t) { return t > after && t <= hi; };
  const auto& segs = y.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double seg_end =
        (i + 1 < segs.size()) ? segs[i + 1].start : y.horizon();
    if (seg_end <= after) continue;
    if (segs[i].start > hi) break;
    const double a = std::max(after, segs[i].start);
    const double b = std::min(hi, seg_end);
    if (!(b > a)) continue;

    double candidates[5];
    int count = 0;
    candidates[count++] = a;
    candidates[count++] = b;
    candidates[count++] = 0.5 * (a + b);
    if (segs[i].kind == SegmentKind::kLinear && segs[i].slope != 0.0) {
      const double root =
          segs[i].start + (level - segs[i].value) / segs[i].slope;
      if (root > a && root < b) {
        candidates[count++] = 0.5 * (a + root);
        candidates[count++] = 0.5 * (root + b);
      }
    }
    for (int c = 0; c < count; ++c)
      if (good(candidates[c]) && y.value_at(candidates[c]) > level)
        return candidates[c];
  }
  if (good(y.horizon()) && y.terminal() > level) return y.horizon();
  return std::nullopt;
}

}  // namespace

RegularityResult is_regular_level(const CadlagPath& y, double level) {
  const TimeValue passage = first_passage(y, level);
  if (passage.infinite())
    throw std::invalid_argument("is_regular_level: no finite first passage");
  const double tau = passage.seconds();

  bool regular = false;
  if (tau == y.horizon()) {
    regular = false;  // nothing after the horizon can witness an overshoot
  } else if (y.value_at(tau) > level) {
    regular = true;  // jump overshoot; right-continuity keeps it above
  } else {
    // value_at(tau) == level exactly: look at the piece running from tau.
    const auto& segs = y.segments();
    std::size_t i = 0;
    while (i + 1 < segs.size() && segs[i + 1].start <= tau) ++i;
    const double slope =
        segs[i].kind == SegmentKind::kLinear ? segs[i].slope : 0.0;
    regular = slope > 0.0;
  }

  RegularityResult result;
  result.regular = regular;
  if (regular) {
    // Walk the epsilon ladder down; keep the witness of the smallest rung
    // that still produces one.
    double eps = y.horizon();
    std::optional<double> witness;
    for (int k = 0; k <= 20; ++k) {
      auto w = overshoot_point(y, level, tau, eps);
      if (!w) break;
      witness = w;
      eps *= 0.5;
    }
    result.witness = witness;
  }
  return result;
}

NtReport check_nt_scalar(const CadlagPath& y, double horizon) {
  if (!(horizon > 0.0) || horizon > y.horizon())
    throw std::invalid_argument("check_nt: bad horizon");
  const CadlagPath yr =
      horizon == y.horizon() ? y : y.restricted(horizon);

  NtReport report;
  const TimeValue tau = first_passage(yr, 0.0);
  report.exit = tau;

  if (tau.infinite()) {
    const double buffer = yr.sup_on(0.0, horizon);
    report.interior_buffer = buffer;
    report.verdict = buffer < 0.0 ? NtCase::kNoExit : NtCase::kFailNtMinus;
    return report;
  }

  // Before a finite exit every attained value is strictly negative by
  // construction of the infimum; assert it piece by piece. (The sup over the
  // half-open pre-exit window may still be 0 as an unattained left limit.)
  const double t = tau.seconds();
  for (const PathSegment& s : yr.segments()) {
    if (s.start >= t) break;
    if (s.value >= 0.0)
      throw std::logic_error("check_nt: pre-exit value not negative");
  }
  report.interior_buffer = yr.sup_on(0.0, t, true, false);
  const RegularityResult reg = is_regular_level(yr, 0.0);
  if (reg.regular) {
    report.verdict = NtCase::kGenuineCrossing;
    if (reg.witness)
      report.overshoot_witness = {*reg.witness, yr.value_at(*reg.witness)};
  } else {
    report.verdict = NtCase::kFailNtPlus;
  }
  return report;
}

NtReport check_nt(const CadlagPath& x, const BarrierField& field,
                  double horizon, int resolution) {
  const CadlagPath xr =
      horizon == x.horizon() ? x : x.restricted(horizon);
  return check_nt_scalar(scalarize(xr, field, resolution), horizon);
}

std::string to_string(NtCase c) {
  switch (c) {
    case NtCase::kNoExit:
      return "NO_EXIT";
    case NtCase::kGenuineCrossing:
      return "GENUINE_CROSSING";
    case NtCase::kFailNtMinus:
      return "FAIL_NT_MINUS";
    case NtCase::kFailNtPlus:
      return "FAIL_NT_PLUS";
  }
  return "UNKNOWN";
}

}  // namespace exitflow
