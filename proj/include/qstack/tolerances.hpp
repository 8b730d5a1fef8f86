// Copyright 2026 The qstack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSTACK_TOLERANCES_HPP_
#define QSTACK_TOLERANCES_HPP_

namespace qstack {

// Numerical tolerances shared by runtime validation and the test suites.
struct Tolerances {
  // DensityMatrix invariants.
  static constexpr double kHermiticity = 1e-12;
  static constexpr double kTrace = 1e-12;
  static constexpr double kPositivity = 1e-10;

  // apply_kraus rejects operator sets whose sum E^dag E deviates from the
  // identity by more than this (max-norm).
  static constexpr double kKrausCompleteness = 1e-10;

  // Every family built by the channels module meets this tighter bound.
  static constexpr double kChannelCompleteness = 1e-12;

  // Denominators in the closed forms at or below this magnitude are singular.
  static constexpr double kSingularDenominator = 1e-14;

  // Grid values within this (relative) distance of the maximum count as ties.
  static constexpr double kGridTie = 1e-12;
};

}  // namespace qstack

#endif  // QSTACK_TOLERANCES_HPP_
