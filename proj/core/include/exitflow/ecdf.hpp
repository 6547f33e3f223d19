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

#ifndef EXITFLOW_ECDF_HPP_
#define EXITFLOW_ECDF_HPP_

#include <functional>
#include <vector>

#include "exitflow/time_value.hpp"

namespace exitflow {

// Empirical distribution of extended-time samples: sorted finite values plus
// the count of infinite outcomes; the total mass is spread over all samples,
// so the finite part tops out below 1 whenever some samples never exit.
class Ecdf {
 public:
  static Ecdf from_samples(const std::vector<TimeValue>& samples);

  long size() const { return static_cast<long>(sorted_.size()) + infinite_; }
  long finite_count() const { return static_cast<long>(sorted_.size()); }
  long infinite_count() const { return infinite_; }
  const std::vector<double>& sorted_finite() const { return sorted_; }

  double at(double x) const;       // fraction of samples <= x
  double at_left(double x) const;  // fraction of samples < x

  friend bool operator==(const Ecdf&, const Ecdf&) = default;

 private:
  std::vector<double> sorted_;
  long infinite_ = 0;
};

// One-sample Kolmogorov-Smirnov statistic against a nondecreasing reference
// cdf: sup over sample points of the larger one-sided gap.
double ks_statistic(const Ecdf& ecdf, const std::function<double(double)>& cdf);

// Classic 95% band width for an N-sample empirical cdf.
double ks_band_95(long samples);

// Deterministic pairwise summation (order-independent reductions).
double pairwise_sum(const std::vector<double>& xs);

}  // namespace exitflow

#endif  // EXITFLOW_ECDF_HPP_
