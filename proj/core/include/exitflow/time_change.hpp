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

#ifndef EXITFLOW_TIME_CHANGE_HPP_
#define EXITFLOW_TIME_CHANGE_HPP_

#include <utility>
#include <vector>

namespace exitflow {

// A strictly increasing piecewise-linear bijection of [0, T]: lambda(0) = 0,
// lambda(T) = T, linear between knots. Admits exact inversion, and the
// distortion sup |lambda(s) - s| is attained at a knot because the difference
// is piecewise linear.
class TimeChange {
 public:
  // Knots (s_j, lambda(s_j)); both coordinates strictly increasing, first
  // knot (0, 0), last knot (T, T).
  explicit TimeChange(std::vector<std::pair<double, double>> knots);

  static TimeChange identity(double horizon);

  double horizon() const { return s_.back(); }
  const std::vector<double>& knot_times() const { return s_; }
  const std::vector<double>& knot_values() const { return v_; }

  double operator()(double s) const;

  // The unique s with lambda(s) == t.
  double preimage(double t) const;

  TimeChange inverse() const;

  double distortion() const;

 private:
  std::vector<double> s_, v_;
};

}  // namespace exitflow

#endif  // EXITFLOW_TIME_CHANGE_HPP_
