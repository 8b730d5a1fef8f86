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

#ifndef QSTACK_TESTS_SUPPORT_HELPERS_HPP_
#define QSTACK_TESTS_SUPPORT_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <random>

#include "qstack/game.hpp"
#include "reference.hpp"

namespace testing {

inline ref::Kind to_ref(qstack::ChannelKind k) {
  switch (k) {
    case qstack::ChannelKind::kAmplitudeDamping: return ref::Kind::kAd;
    case qstack::ChannelKind::kPhaseDamping: return ref::Kind::kPd;
    case qstack::ChannelKind::kDepolarizing: return ref::Kind::kDp;
  }
  return ref::Kind::kAd;
}

inline ref::Config to_ref(const qstack::GameConfig& c) {
  return {to_ref(c.kind()), c.theta, c.k, c.use1.p, c.use1.mu, c.use2.p,
          c.use2.mu};
}

inline double max_abs_diff(const qstack::Matrix4& a, const ref::M4& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j) - b[i][j]));
  return m;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline constexpr qstack::ChannelKind kAllKinds[] = {
    qstack::ChannelKind::kAmplitudeDamping, qstack::ChannelKind::kPhaseDamping,
    qstack::ChannelKind::kDepolarizing};

}  // namespace testing

#endif  // QSTACK_TESTS_SUPPORT_HELPERS_HPP_
