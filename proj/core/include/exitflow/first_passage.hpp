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

#ifndef EXITFLOW_FIRST_PASSAGE_HPP_
#define EXITFLOW_FIRST_PASSAGE_HPP_

#include <optional>
#include <string>
#include <utility>

#include "exitflow/barrier.hpp"
#include "exitflow/cadlag_path.hpp"
#include "exitflow/time_value.hpp"

namespace exitflow {

// First time the scalar path reaches or exceeds `level`: the exact infimum
// of {t : y(t) >= level}, found segment by segment (threshold test on
// constant pieces, root on linear pieces, jump checks at breakpoints).
// Infinite when the level is never reached on the horizon.
TimeValue first_passage(const CadlagPath& y, double level);

// First time the path leaves the field's negative region, i.e. the first
// passage of the scalarized path across 0. Shifted fields give the exit
// across any level.
TimeValue exit_time(const CadlagPath& x, const BarrierField& field,
                    int resolution = 64);
TimeValue exit_time(const VectorPath& x, const BarrierField& field,
                    int resolution = 64);

// The increasing homeomorphism t/(1+t) from [0, inf] onto [0, 1]; infinity
// maps to the boundary value 1.
double compactify(TimeValue t);

struct RegularityResult {
  bool regular = false;
  // A time strictly after the passage where the path strictly exceeds the
  // level; produced for the smallest rung of the epsilon ladder.
  std::optional<double> witness;
};

// Whether the path strictly overshoots `level` arbitrarily soon after first
// reaching it. Decided exactly from the local piecewise structure at the
// passage time (jump overshoot, positive slope, or strict excess at the next
// piece); the epsilon ladder only produces the reported witness. A passage
// exactly at the horizon has no room to overshoot and is not regular.
// Requires a finite first passage.
RegularityResult is_regular_level(const CadlagPath& y, double level);

enum class NtCase {
  kNoExit,           // no passage, uniform negative buffer on the horizon
  kGenuineCrossing,  // finite passage, strictly negative before, overshoot after
  kFailNtMinus,      // no passage but the sup over the horizon reaches 0
  kFailNtPlus,       // finite passage, but 0 is not regular at the exit
};

std::string to_string(NtCase c);

struct NtReport {
  NtCase verdict = NtCase::kNoExit;
  TimeValue exit;
  // sup of the scalarized path over [0, horizon] when there is no exit,
  // over [0, exit) before a finite exit.
  double interior_buffer = 0.0;
  std::optional<std::pair<double, double>> overshoot_witness;  // (time, value)
};

// The non-tangency verdict for a scalar path at level 0 on [0, horizon].
NtReport check_nt_scalar(const CadlagPath& y, double horizon);

// Scalarizes x against the field on [0, horizon] and checks non-tangency.
NtReport check_nt(const CadlagPath& x, const BarrierField& field,
                  double horizon, int resolution = 64);

}  // namespace exitflow

#endif  // EXITFLOW_FIRST_PASSAGE_HPP_
