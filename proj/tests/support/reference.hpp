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

// Independent reference model for the tests. Plain std::array matrices, its
// own Kraus tables and an analytic backward induction; shares nothing with the
// library beyond the C++ standard library.

#ifndef QSTACK_TESTS_SUPPORT_REFERENCE_HPP_
#define QSTACK_TESTS_SUPPORT_REFERENCE_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace ref {

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;
using M4 = std::array<std::array<C, 4>, 4>;

inline M4 zero4() {
  M4 m{};
  for (auto& r : m) r.fill(C(0.0));
  return m;
}

inline M4 mul(const M4& a, const M4& b) {
  M4 out = zero4();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline M4 dagger(const M4& a) {
  M4 out = zero4();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = std::conj(a[j][i]);
  return out;
}

inline M4 add(const M4& a, const M4& b, double wa = 1.0, double wb = 1.0) {
  M4 out = zero4();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = wa * a[i][j] + wb * b[i][j];
  return out;
}

// Index (2a + b) with a the first qubit.
inline M4 tensor(const M2& a, const M2& b) {
  M4 out = zero4();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return out;
}

inline M2 sigma(int n) {
  const C i(0.0, 1.0);
  switch (n) {
    case 1: return M2{{{C(0), C(1)}, {C(1), C(0)}}};
    case 2: return M2{{{C(0), -i}, {i, C(0)}}};
    case 3: return M2{{{C(1), C(0)}, {C(0), C(-1)}}};
    default: return M2{{{C(1), C(0)}, {C(0), C(1)}}};
  }
}

inline M2 scaled(const M2& m, double s) {
  M2 out = m;
  for (auto& r : out)
    for (auto& v : r) v *= s;
  return out;
}

enum class Kind { kAd, kPd, kDp };

// (1 - mu) * uncorrelated + mu * correlated, as one weighted Kraus list.
inline std::vector<M4> kraus(Kind kind, double p, double mu) {
  std::vector<M4> ops;
  const double wu = std::sqrt(1.0 - mu);
  const double wc = std::sqrt(mu);
  if (kind == Kind::kAd) {
    const M2 e0{{{C(1), C(0)}, {C(0), C(std::sqrt(1.0 - p))}}};
    const M2 e1{{{C(0), C(std::sqrt(p))}, {C(0), C(0)}}};
    for (const M2* a : {&e0, &e1})
      for (const M2* b : {&e0, &e1}) ops.push_back(tensor(scaled(*a, wu), *b));
    M4 c0 = zero4();
    c0[0][0] = c0[1][1] = c0[2][2] = wc;
    c0[3][3] = wc * std::sqrt(1.0 - p);
    M4 c1 = zero4();
    c1[0][3] = wc * std::sqrt(p);  // |00><11|
    ops.push_back(c0);
    ops.push_back(c1);
    return ops;
  }
  std::vector<int> idx;
  std::array<double, 4> w{};
  if (kind == Kind::kPd) {
    idx = {0, 3};
    w = {1.0 - p, 0.0, 0.0, p};
  } else {
    idx = {0, 1, 2, 3};
    w = {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
  }
  for (int m : idx)
    for (int n : idx)
      ops.push_back(
          tensor(scaled(sigma(m), wu * std::sqrt(w[m] * w[n])), sigma(n)));
  for (int l : idx)
    ops.push_back(tensor(scaled(sigma(l), wc * std::sqrt(w[l])), sigma(l)));
  return ops;
}

inline M4 apply_ops(const std::vector<M4>& ops, const M4& rho) {
  M4 out = zero4();
  for (const M4& e : ops) out = add(out, mul(mul(e, rho), dagger(e)));
  return out;
}

inline M4 initial(double theta) {
  M4 r = zero4();
  const double c = std::cos(theta), s = std::sin(theta);
  r[0][0] = c * c;
  r[0][3] = r[3][0] = c * s;
  r[3][3] = s * s;
  return r;
}

struct Config {
  Kind kind = Kind::kAd;
  double theta = 0.0, k = 1.0, p1 = 0.0, mu1 = 0.0, p2 = 0.0, mu2 = 0.0;
};

inline M4 final_state(const Config& c, double q1, double q2) {
  const double x = 1.0 / (1.0 + q1), y = 1.0 / (1.0 + q2);
  M4 rho = apply_ops(kraus(c.kind, c.p1, c.mu1), initial(c.theta));
  const M4 fa = tensor(sigma(1), sigma(0));
  const M4 fb = tensor(sigma(0), sigma(1));
  const M4 fab = tensor(sigma(1), sigma(1));
  M4 mixed = zero4();
  mixed = add(mixed, rho, 1.0, x * y);
  mixed = add(mixed, mul(mul(fb, rho), fb), 1.0, x * (1.0 - y));
  mixed = add(mixed, mul(mul(fa, rho), fa), 1.0, (1.0 - x) * y);
  mixed = add(mixed, mul(mul(fab, rho), fab), 1.0, (1.0 - x) * (1.0 - y));
  return apply_ops(kraus(c.kind, c.p2, c.mu2), mixed);
}

struct Pay {
  double a, b;
};

inline Pay payoffs(const Config& c, double q1, double q2) {
  const M4 r = final_state(c, q1, q2);
  const double d = c.k * r[0][0].real() - r[1][1].real() - r[2][2].real();
  const double s = (1.0 + q1) * (1.0 + q2) * d;
  return {q1 * s, q2 * s};
}

// (1+q1)(1+q2)(k rho_11 - rho_22 - rho_33) = a + b q2 + c q1 + e q1 q2,
// read off from four evaluations of the brute-force pipeline.
struct Bilinear {
  double a, b, c, e;
};

inline Bilinear bilinear(const Config& cfg) {
  auto s = [&](double q1, double q2) {
    const M4 r = final_state(cfg, q1, q2);
    return (1.0 + q1) * (1.0 + q2) *
           (cfg.k * r[0][0].real() - r[1][1].real() - r[2][2].real());
  };
  const double s00 = s(0, 0), s01 = s(0, 1), s10 = s(1, 0), s11 = s(1, 1);
  return {s00, s01 - s00, s10 - s00, s11 - s01 - s10 + s00};
}

// Stationary-point backward induction on the bilinear form. The follower
// maximizes q2 (alpha + beta q2) with alpha = a + c q1, beta = b + e q1, so
// q2 = -alpha / (2 beta); along that reaction P_A = q1 (a + c q1) / 2, so
// q1 = -a / (2 c). Valid (interior) when c < 0 and beta(q1) < 0.
struct Equilibrium {
  double q1 = 0, q2 = 0, pa = 0, pb = 0;
  bool interior = false;  // both second-order conditions hold
};

inline Equilibrium equilibrium(const Config& cfg) {
  const Bilinear f = bilinear(cfg);
  Equilibrium eq;
  eq.q1 = -f.a / (2.0 * f.c);
  const double alpha = f.a + f.c * eq.q1;
  const double beta = f.b + f.e * eq.q1;
  eq.q2 = -alpha / (2.0 * beta);
  const double s = alpha + beta * eq.q2;
  eq.pa = eq.q1 * s;
  eq.pb = eq.q2 * s;
  eq.interior = f.c < 0.0 && beta < 0.0;
  return eq;
}

}  // namespace ref

#endif  // QSTACK_TESTS_SUPPORT_REFERENCE_HPP_
