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

#ifndef QSTACK_OPTIMIZE_HPP_
#define QSTACK_OPTIMIZE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "qstack/tolerances.hpp"

namespace qstack {

// Where a bracketed 1-D maximization ended up.
enum class MaximumKind {
  kInterior,   // stationary point strictly inside (0, hi)
  kAtZero,     // best at 0 and non-increasing there: unconstrained optimum < 0
  kExhausted,  // best at hi and still concave: a larger domain may help
  kUnbounded,  // best at hi and convex there: objective grows without bound
  kInvalid,    // no finite sample on the grid
};

struct SearchSettings {
  int grid_points = 2001;
  double tolerance = 1e-10;
  int max_iterations = 200;
  double derivative_step = 1e-6;  // one-sided slope test at 0
  double polish_window = 1e-6;    // relative half-width of the polish bracket
  double polish_step = 1e-4;      // relative central-difference step
};

struct Maximum1D {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  MaximumKind kind = MaximumKind::kInvalid;
  int iterations = 0;         // golden-section plus polish iterations
  double achieved_tol = 0.0;  // final bracket half-width
  bool polished = false;      // derivative-sign polish converged
  bool next_to_invalid = false;  // the best grid cell borders a non-finite sample
};

namespace detail {

template <class F>
double finite_or_neg_inf(F& f, double x) {
  const double v = f(x);
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

// Golden-section search for a maximum on [a, b].
template <class F>
Maximum1D golden(F& f, double a, double b, const SearchSettings& s) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = finite_or_neg_inf(f, c);
  double fd = finite_or_neg_inf(f, d);
  int it = 0;
  while ((b - a) > 2.0 * s.tolerance && it < s.max_iterations) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = finite_or_neg_inf(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = finite_or_neg_inf(f, d);
    }
    ++it;
  }
  Maximum1D m;
  m.x = fc >= fd ? c : d;
  m.value = std::max(fc, fd);
  m.iterations = it;
  m.achieved_tol = 0.5 * (b - a);
  m.kind = MaximumKind::kInterior;
  return m;
}

template <class F>
double slope(F& f, double x, double h) {
  if (x - h < 0.0) {
    // second-order forward difference near the lower bound
    return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  }
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Bisection on the sign of the numerical slope around x. Golden-section stalls
// near sqrt(eps) relative accuracy on flat tops; the slope keeps its sign much
// closer to the stationary point. Returns false when no sign change is seen.
// The caller's max_iterations does not cap this loop.
template <class F>
bool polish(F& f, double& x, double& half_width, int& iterations,
            const SearchSettings& s) {
  const double scale = std::max(1.0, std::abs(x));
  double lo = std::max(0.0, x - s.polish_window * scale);
  double hi = x + s.polish_window * scale;
  // Shrink the step when a difference reaches into a non-finite region, as
  // happens next to a point where the inner problem stops having an answer.
  double h = s.polish_step * scale;
  double slo = slope(f, lo, h);
  double shi = slope(f, hi, h);
  for (int k = 0; k < 4 && !(std::isfinite(slo) && std::isfinite(shi)); ++k) {
    h *= 0.1;
    slo = slope(f, lo, h);
    shi = slope(f, hi, h);
  }
  if (!std::isfinite(slo) || !std::isfinite(shi)) return false;
  if (!(slo > 0.0 && shi < 0.0)) return false;
  // Runs to floating-point resolution rather than s.tolerance: an outer
  // search that calls this one needs the inner value as clean as possible.
  const double resolution = 8.0 * std::numeric_limits<double>::epsilon() * scale;
  for (int k = 0; k < 128 && hi - lo > resolution; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double sm = slope(f, mid, h);
    if (!std::isfinite(sm)) return false;
    if (sm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++iterations;
  }
  x = 0.5 * (lo + hi);
  half_width = 0.5 * (hi - lo);
  return true;
}

}  // namespace detail

// Maximizes f over [0, hi]: coarse grid scan (ties resolved to the smallest
// x), golden-section refinement of the best cell, then slope polish. Non-finite
// samples count as -inf.
template <class F>
Maximum1D maximize_on_interval(F f, double hi, const SearchSettings& s) {
  const int n = std::max(3, s.grid_points);
  // Uninitialized on purpose: every slot is written below, and this function
  // runs once per leader sample.
  std::unique_ptr<double[]> storage(new double[static_cast<std::size_t>(n)]);
  double* values = storage.get();
  const double step = hi / (n - 1);
  for (int i = 0; i < n - 1; ++i) values[i] = f(step * i);
  values[n - 1] = f(hi);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  constexpr double kHuge = std::numeric_limits<double>::max();
  // Four independent running maxima break the loop-carried dependency; max is
  // exact, so the result does not depend on the split.
  double acc[4] = {kNegInf, kNegInf, kNegInf, kNegInf};
  int base = 0;
  for (; base + 4 <= n; base += 4) {
    for (int j = 0; j < 4; ++j) {
      // Branch-free finiteness test (false for NaN and +-inf).
      const double v = std::abs(values[base + j]) <= kHuge ? values[base + j] : kNegInf;
      values[base + j] = v;
      acc[j] = std::max(acc[j], v);
    }
  }
  for (int i = base; i < n; ++i) {
    const double v = std::abs(values[i]) <= kHuge ? values[i] : kNegInf;
    values[i] = v;
    acc[0] = std::max(acc[0], v);
  }
  double best_value = std::max(std::max(acc[0], acc[1]), std::max(acc[2], acc[3]));
  int best = -1;
  if (std::isfinite(best_value)) {
    const double tie =
        best_value - Tolerances::kGridTie * std::max(1.0, std::abs(best_value));
    for (int i = 0; i < n; ++i) {
      if (values[i] >= tie) {
        best = i;
        break;
      }
    }
  }
  Maximum1D m;
  if (best < 0) return m;
  best_value = values[best];

  auto at = [&](int i) { return values[i]; };
  m.next_to_invalid = (best > 0 && !std::isfinite(at(best - 1))) ||
                      (best < n - 1 && !std::isfinite(at(best + 1)));

  if (best == 0) {
    const double h = s.derivative_step;
    const double d0 = (-3.0 * f(0.0) + 4.0 * f(h) - f(2.0 * h)) / (2.0 * h);
    if (!(d0 > 0.0)) {
      m.x = 0.0;
      m.value = best_value;
      m.kind = MaximumKind::kAtZero;
      return m;
    }
  }
  if (best == n - 1) {
    const double curvature =
        at(n - 1) - 2.0 * f(0.75 * hi) + f(0.5 * hi);
    m.x = hi;
    m.value = best_value;
    m.kind = (curvature >= 0.0) ? MaximumKind::kUnbounded
                                : MaximumKind::kExhausted;
    return m;
  }

  const double a = best > 0 ? step * (best - 1) : 0.0;
  const double b = step * (best + 1);
  Maximum1D g = detail::golden(f, a, b, s);
  if (g.value < best_value) {
    g.x = step * best;
    g.value = best_value;
  }
  g.next_to_invalid = m.next_to_invalid;
  double x = g.x;
  double width = g.achieved_tol;
  int iterations = g.iterations;
  if (detail::polish(f, x, width, iterations, s)) {
    const double v = detail::finite_or_neg_inf(f, x);
    // A bracketed slope sign change beats golden-section's best sample, whose
    // value can sit above the true maximum by rounding noise.
    if (std::isfinite(v)) {
      g.x = x;
      g.value = v;
      g.achieved_tol = width;
      g.polished = true;
    }
  }
  g.iterations = iterations;
  return g;
}

}  // namespace qstack

#endif  // QSTACK_OPTIMIZE_HPP_
