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

#include "exitflow/cadlag_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "exitflow/time_change.hpp"

namespace exitflow {

namespace {

double segment_value(const PathSegment& seg, double t) {
  if (seg.kind == SegmentKind::kConstant) return seg.value;
  return seg.value + seg.slope * (t - seg.start);
}

// Value the segment tends to as t increases to `end` from below.
double segment_end_limit(const PathSegment& seg, double end) {
  return segment_value(seg, end);
}

}  // namespace

CadlagPath::CadlagPath(std::vector<PathSegment> segments, double terminal,
                       double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("CadlagPath: horizon must be finite positive");
  if (segments.empty())
    throw std::invalid_argument("CadlagPath: at least one segment required");
  if (segments.front().start != 0.0)
    throw std::invalid_argument("CadlagPath: first segment must start at 0");
  if (std::isnan(terminal))
    throw std::invalid_argument("CadlagPath: NaN terminal");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const PathSegment& s = segments[i];
    if (std::isnan(s.value) || std::isnan(s.slope) || std::isnan(s.start))
      throw std::invalid_argument("CadlagPath: NaN in segment");
    if (s.start >= horizon)
      throw std::invalid_argument("CadlagPath: segment start beyond horizon");
    if (i > 0 && !(s.start > segments[i - 1].start))
      throw std::invalid_argument(
          "CadlagPath: breakpoints must be strictly increasing");
  }

  // Canonical form: zero-slope linear pieces are constants, and adjacent
  // pieces that continue the same line or level are merged.
  std::vector<PathSegment> norm;
  norm.reserve(segments.size());
  for (PathSegment s : segments) {
    if (s.kind == SegmentKind::kLinear && s.slope == 0.0)
      s.kind = SegmentKind::kConstant;
    if (s.kind == SegmentKind::kConstant) s.slope = 0.0;
    if (!norm.empty()) {
      PathSegment& p = norm.back();
      const double junction = segment_value(p, s.start);
      const bool seamless =
          p.kind == s.kind && junction == s.value &&
          (p.kind == SegmentKind::kConstant || p.slope == s.slope);
      if (seamless) continue;  // the previous piece already covers this one
    }
    norm.push_back(s);
  }

  horizon_ = horizon;
  segments_ = std::move(norm);
  terminal_ = terminal;
}

CadlagPath CadlagPath::constant(double value, double horizon) {
  return CadlagPath({{0.0, SegmentKind::kConstant, value, 0.0}}, value,
                    horizon);
}

CadlagPath CadlagPath::linear(double value_at_zero, double slope,
                              double horizon) {
  return CadlagPath({{0.0, SegmentKind::kLinear, value_at_zero, slope}},
                    value_at_zero + slope * horizon, horizon);
}

CadlagPath CadlagPath::step(const std::vector<double>& times,
                            const std::vector<double>& values,
                            double horizon) {
  if (times.size() != values.size() || times.empty())
    throw std::invalid_argument("CadlagPath::step: times/values mismatch");
  std::vector<PathSegment> segs;
  segs.reserve(times.size());
  double terminal = values.back();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > horizon)
      throw std::invalid_argument("CadlagPath::step: time beyond horizon");
    if (times[i] == horizon) {
      if (i + 1 != times.size())
        throw std::invalid_argument(
            "CadlagPath::step: only the last time may equal the horizon");
      break;  // values.back() is the terminal value
    }
    segs.push_back({times[i], SegmentKind::kConstant, values[i], 0.0});
  }
  return CadlagPath(std::move(segs), terminal, horizon);
}

CadlagPath CadlagPath::piecewise_linear(
    const std::vector<std::pair<double, double>>& nodes) {
  if (nodes.size() < 2)
    throw std::invalid_argument("piecewise_linear: need at least two nodes");
  if (nodes.front().first != 0.0)
    throw std::invalid_argument("piecewise_linear: first node must be at 0");
  std::vector<PathSegment> segs;
  segs.reserve(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double dt = nodes[i + 1].first - nodes[i].first;
    if (!(dt > 0.0))
      throw std::invalid_argument("piecewise_linear: nodes not increasing");
    const double slope = (nodes[i + 1].second - nodes[i].second) / dt;
    segs.push_back({nodes[i].first, SegmentKind::kLinear, nodes[i].second,
                    slope});
  }
  return CadlagPath(std::move(segs), nodes.back().second, nodes.back().first);
}

std::size_t CadlagPath::segment_index(double t) const {
  // Last segment with start <= t.
  std::size_t lo = 0, hi = segments_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (segments_[mid].start <= t)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double CadlagPath::value_at(double t) const {
  if (t < 0.0 || t > horizon_)
    throw std::out_of_range("CadlagPath::value_at: t outside [0, horizon]");
  if (t == horizon_) return terminal_;
  return segment_value(segments_[segment_index(t)], t);
}

double CadlagPath::left_limit(double t) const {
  if (t < 0.0 || t > horizon_)
    throw std::out_of_range("CadlagPath::left_limit: t outside [0, horizon]");
  if (t == 0.0) return value_at(0.0);  // convention: no history before 0
  if (t == horizon_) return segment_end_limit(segments_.back(), t);
  const std::size_t i = segment_index(t);
  if (segments_[i].start == t)  // breakpoint: the previous piece carries it
    return segment_end_limit(segments_[i - 1], t);
  return segment_value(segments_[i], t);
}

double CadlagPath::sup_on(double lo, double hi, bool include_lo,
                          bool include_hi) const {
  if (lo < 0.0 || hi > horizon_ || lo > hi)
    throw std::out_of_range("CadlagPath::sup_on: bad interval");
  if (lo == hi) {
    if (include_lo && include_hi) return value_at(lo);
    return -std::numeric_limits<double>::infinity();  // sup of the empty set
  }
  // By right-continuity an excluded left endpoint changes nothing: values
  // just inside the interval reach the same supremum.
  double best = value_at(lo);
  const std::size_t first = segment_index(lo);
  for (std::size_t i = first; i < segments_.size(); ++i) {
    const double seg_start = segments_[i].start;
    const double seg_end =
        (i + 1 < segments_.size()) ? segments_[i + 1].start : horizon_;
    if (seg_start >= hi) break;
    const double a = std::max(lo, seg_start);
    const double b = std::min(hi, seg_end);
    if (a >= b) continue;
    best = std::max(best, segment_value(segments_[i], a));
    best = std::max(best, segment_end_limit(segments_[i], b));
  }
  if (include_hi) best = std::max(best, value_at(hi));
  return best;
}

std::vector<Jump> CadlagPath::jumps() const {
  std::vector<Jump> out;
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const double t = segments_[i].start;
    const double size = segments_[i].value - segment_end_limit(segments_[i - 1], t);
    if (size != 0.0) out.push_back({t, size});
  }
  const double end_size = terminal_ - segment_end_limit(segments_.back(), horizon_);
  if (end_size != 0.0) out.push_back({horizon_, end_size});
  return out;
}

CadlagPath CadlagPath::time_changed(const TimeChange& lambda) const {
  if (lambda.horizon() != horizon_)
    throw std::invalid_argument("time_changed: horizon mismatch");

  // Walk the source pieces in preimage space, cutting additionally at
  // lambda's knots (slope kinks). The first cell of each source piece takes
  // the exact source value and later cells continue the line seamlessly, so
  // jumps appear exactly at the preimages of the source jumps.
  const std::vector<double>& knots = lambda.knot_times();
  std::vector<PathSegment> out;
  out.reserve(segments_.size() + knots.size());
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    const double s_begin =
        j == 0 ? 0.0 : lambda.preimage(segments_[j].start);
    const double s_end = (j + 1 < segments_.size())
                             ? lambda.preimage(segments_[j + 1].start)
                             : horizon_;
    std::vector<double> cells{s_begin};
    for (double k : knots)
      if (k > s_begin && k < s_end) cells.push_back(k);
    cells.push_back(s_end);

    double value = segments_[j].value;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
      if (!(cells[c + 1] > cells[c])) continue;
      PathSegment seg;
      seg.start = cells[c];
      seg.kind = segments_[j].kind;
      seg.value = value;
      if (segments_[j].kind == SegmentKind::kLinear) {
        const double rate = (lambda(cells[c + 1]) - lambda(cells[c])) /
                            (cells[c + 1] - cells[c]);
        seg.slope = segments_[j].slope * rate;
        value += seg.slope * (cells[c + 1] - cells[c]);
      }
      out.push_back(seg);
    }
  }
  return CadlagPath(std::move(out), terminal_, horizon_);
}

CadlagPath CadlagPath::restricted(double new_horizon) const {
  if (!(new_horizon > 0.0) || new_horizon > horizon_)
    throw std::invalid_argument("restricted: bad horizon");
  const double term = value_at(new_horizon);
  std::vector<PathSegment> segs;
  for (const PathSegment& s : segments_) {
    if (s.start >= new_horizon) break;
    segs.push_back(s);
  }
  return CadlagPath(std::move(segs), term, new_horizon);
}

CadlagPath CadlagPath::shifted(double c) const {
  std::vector<PathSegment> segs = segments_;
  for (PathSegment& s : segs) s.value += c;
  return CadlagPath(std::move(segs), terminal_ + c, horizon_);
}

bool CadlagPath::is_step() const {
  for (const PathSegment& s : segments_)
    if (s.kind != SegmentKind::kConstant) return false;
  return true;
}

bool CadlagPath::is_nondecreasing(double tol) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].kind == SegmentKind::kLinear && segments_[i].slope < 0.0)
      return false;
    if (i > 0) {
      const double lim = segment_end_limit(segments_[i - 1], segments_[i].start);
      if (segments_[i].value < lim - tol) return false;
    }
  }
  return terminal_ >= segment_end_limit(segments_.back(), horizon_) - tol;
}

double uniform_distance(const CadlagPath& f, const CadlagPath& g) {
  if (f.horizon() != g.horizon())
    throw std::invalid_argument("uniform_distance: horizon mismatch");
  std::vector<double> cuts;
  cuts.reserve(f.segments().size() + g.segments().size() + 1);
  for (const PathSegment& s : f.segments()) cuts.push_back(s.start);
  for (const PathSegment& s : g.segments()) cuts.push_back(s.start);
  cuts.push_back(f.horizon());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double best = 0.0;
  for (double t : cuts) {
    best = std::max(best, std::abs(f.value_at(t) - g.value_at(t)));
    best = std::max(best, std::abs(f.left_limit(t) - g.left_limit(t)));
  }
  return best;
}

VectorPath::VectorPath(std::vector<CadlagPath> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("VectorPath: no components");
  for (const CadlagPath& c : components_)
    if (c.horizon() != components_.front().horizon())
      throw std::invalid_argument("VectorPath: horizon mismatch");
}

double VectorPath::horizon() const { return components_.front().horizon(); }

std::vector<double> VectorPath::value_at(double t) const {
  std::vector<double> v(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i)
    v[i] = components_[i].value_at(t);
  return v;
}

}  // namespace exitflow
