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

#include "exitflow/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace exitflow {

Ecdf Ecdf::from_samples(const std::vector<TimeValue>& samples) {
  Ecdf e;
  e.sorted_.reserve(samples.size());
  for (const TimeValue& s : samples) {
    if (s.infinite())
      ++e.infinite_;
    else
      e.sorted_.push_back(s.seconds());
  }
  std::sort(e.sorted_.begin(), e.sorted_.end());
  return e;
}

double Ecdf::at(double x) const {
  if (size() == 0) throw std::logic_error("Ecdf: empty");
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / size();
}

double Ecdf::at_left(double x) const {
  if (size() == 0) throw std::logic_error("Ecdf: empty");
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / size();
}

double ks_statistic(const Ecdf& ecdf,
                    const std::function<double(double)>& cdf) {
  double best = 0.0;
  for (double x : ecdf.sorted_finite()) {
    // Pre-jump gaps probe the reference just left of the sample, which for a
    // continuous reference is its value at the sample itself.
    const double left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    best = std::max(best, std::abs(ecdf.at(x) - cdf(x)));
    best = std::max(best, std::abs(ecdf.at_left(x) - left));
  }
  return best;
}

double ks_band_95(long samples) {
  if (samples < 1) throw std::invalid_argument("ks_band_95: no samples");
  return 1.36 / std::sqrt(static_cast<double>(samples));
}

double pairwise_sum(const std::vector<double>& xs) {
  // Fixed reduction tree: the result does not depend on thread scheduling.
  std::function<double(std::size_t, std::size_t)> reduce =
      [&](std::size_t lo, std::size_t hi) -> double {
    if (hi - lo <= 8) {
      double acc = 0.0;
      for (std::size_t i = lo; i < hi; ++i) acc += xs[i];
      return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return reduce(lo, mid) + reduce(mid, hi);
  };
  return xs.empty() ? 0.0 : reduce(0, xs.size());
}

}  // namespace exitflow
