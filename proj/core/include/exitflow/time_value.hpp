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

#ifndef EXITFLOW_TIME_VALUE_HPP_
#define EXITFLOW_TIME_VALUE_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace exitflow {

// An extended model time: a finite nonnegative number of seconds, or the
// distinguished value "never" (+infinity). Every finite value compares
// strictly below infinity.
class TimeValue {
 public:
  TimeValue() : t_(0.0) {}

  explicit TimeValue(double t) : t_(t) {
    if (std::isnan(t)) throw std::invalid_argument("TimeValue: NaN");
    if (t < 0.0) throw std::invalid_argument("TimeValue: negative time");
  }

  static TimeValue infinity() {
    TimeValue v;
    v.t_ = std::numeric_limits<double>::infinity();
    return v;
  }

  bool finite() const { return std::isfinite(t_); }
  bool infinite() const { return !finite(); }

  // Finite value in seconds; throws when the value is infinite.
  double seconds() const {
    if (!finite()) throw std::domain_error("TimeValue: infinite");
    return t_;
  }

  // Raw stored value; +inf when infinite. Handy for ordering and plotting.
  double raw() const { return t_; }

  friend bool operator==(TimeValue a, TimeValue b) { return a.t_ == b.t_; }
  friend bool operator!=(TimeValue a, TimeValue b) { return a.t_ != b.t_; }
  friend bool operator<(TimeValue a, TimeValue b) { return a.t_ < b.t_; }
  friend bool operator<=(TimeValue a, TimeValue b) { return a.t_ <= b.t_; }
  friend bool operator>(TimeValue a, TimeValue b) { return a.t_ > b.t_; }
  friend bool operator>=(TimeValue a, TimeValue b) { return a.t_ >= b.t_; }

  std::string to_string() const;

 private:
  double t_;
};

inline std::string TimeValue::to_string() const {
  if (!finite()) return "INF";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", t_);
  return buf;
}

}  // namespace exitflow

#endif  // EXITFLOW_TIME_VALUE_HPP_
