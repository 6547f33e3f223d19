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

#include "exitflow/time_change.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exitflow {

TimeChange::TimeChange(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2)
    throw std::invalid_argument("TimeChange: need at least two knots");
  if (knots.front() != std::pair<double, double>(0.0, 0.0))
    throw std::invalid_argument("TimeChange: must fix 0");
  if (knots.back().first != knots.back().second)
    throw std::invalid_argument("TimeChange: must fix the horizon");
  s_.reserve(knots.size());
  v_.reserve(knots.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (std::isnan(knots[i].first) || std::isnan(knots[i].second))
      throw std::invalid_argument("TimeChange: NaN knot");
    if (i > 0 && (knots[i].first <= knots[i - 1].first ||
                  knots[i].second <= knots[i - 1].second))
      throw std::invalid_argument("TimeChange: knots must strictly increase");
    s_.push_back(knots[i].first);
    v_.push_back(knots[i].second);
  }
}

TimeChange TimeChange::identity(double horizon) {
  return TimeChange({{0.0, 0.0}, {horizon, horizon}});
}

double TimeChange::operator()(double s) const {
  if (s < 0.0 || s > horizon())
    throw std::out_of_range("TimeChange: point outside [0, horizon]");
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const std::size_t j = static_cast<std::size_t>(it - s_.begin());
  if (j == s_.size()) return v_.back();
  if (j == 0) return v_.front();
  const double w = (s - s_[j - 1]) / (s_[j] - s_[j - 1]);
  return v_[j - 1] + w * (v_[j] - v_[j - 1]);
}

double TimeChange::preimage(double t) const {
  if (t < 0.0 || t > horizon())
    throw std::out_of_range("TimeChange::preimage: outside [0, horizon]");
  const auto it = std::lower_bound(v_.begin(), v_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - v_.begin());
  if (v_[j] == t) return s_[j];
  const double w = (t - v_[j - 1]) / (v_[j] - v_[j - 1]);
  return s_[j - 1] + w * (s_[j] - s_[j - 1]);
}

TimeChange TimeChange::inverse() const {
  std::vector<std::pair<double, double>> knots;
  knots.reserve(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) knots.emplace_back(v_[i], s_[i]);
  return TimeChange(std::move(knots));
}

double TimeChange::distortion() const {
  double d = 0.0;
  for (std::size_t i = 0; i < s_.size(); ++i)
    d = std::max(d, std::abs(v_[i] - s_[i]));
  return d;
}

}  // namespace exitflow
