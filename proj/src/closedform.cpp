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

#include "qstack/closedform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qstack/errors.hpp"
#include "qstack/tolerances.hpp"

namespace qstack {

namespace {

double checked_ratio(double num, double den, const char* what) {
  if (!std::isfinite(num) || !std::isfinite(den) ||
      std::abs(den) < Tolerances::kSingularDenominator) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": denominator " << den << " vanishes";
    throw SingularConfiguration(os.str());
  }
  return num / den;
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in [0, 1]");
  }
}

void check_general(double theta, double k, double p1, double p2, double mu1,
                   double mu2) {
  if (!std::isfinite(theta)) throw InvalidInput("theta must be finite");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("k must be positive");
  check_unit(p1, "p1");
  check_unit(p2, "p2");
  check_unit(mu1, "mu1");
  check_unit(mu2, "mu2");
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

}  // namespace

DampingTerms ad_damping(double theta, double k, double p1, double p2,
                        double mu1, double mu2) {
  const double c2t = std::cos(2.0 * theta);
  const double cc = std::cos(theta) * std::cos(theta);
  const double ss = std::sin(theta) * std::sin(theta);
  const double m1 = -1.0 + mu1;
  const double m2 = -1.0 + mu2;
  DampingTerms t;

  // p1 {mu1 + p2 (2 - p2 (-2 + mu1)(-1 + mu2) - 4 mu2 + mu1 (-2 + 3 mu2))}
  const double x = mu1 + p2 * (2.0 - p2 * (-2.0 + mu1) * m2 - 4.0 * mu2 +
                               mu1 * (-2.0 + 3.0 * mu2));
  const double s = p2 * (p2 + mu2 - p2 * mu2);
  // -1 + p2 (2 - 3 mu2) + p2^2 (-1 + mu2)
  const double w = -1.0 + p2 * (2.0 - 3.0 * mu2) + p2 * p2 * m2;

  t.a1 = 0.5 * (-k - 4.0 * (-1.0 + p1) * (-1.0 + p2) * p2 * m2 -
                2.0 * k * s - 2.0 * k * p1 * x - k * c2t +
                4.0 * (-1.0 + p1) * (-1.0 + p2) * p2 * m2 * c2t +
                2.0 * k * s * c2t + 2.0 * k * p1 * x * c2t) -
         2.0 * p1 * m1 *
             (2.0 +
              p1 * (-2.0 + k * w - 4.0 * p2 * m2 + 2.0 * p2 * p2 * m2) +
              4.0 * p2 * m2 - 2.0 * p2 * p2 * m2) *
             ss;

  t.a2 = -4.0 * (1.0 + k) * p2 * m2 -
         4.0 * (-1.0 + p1) * p1 * m1 *
             (-2.0 + k * w - 4.0 * p2 * m2 + 2.0 * p2 * p2 * m2) * ss;

  t.b1 = -2.0 +
         k / 8.0 *
             (1.0 + 2.0 * s +
              2.0 * p1 *
                  (mu1 + p2 * (2.0 - 4.0 * mu2 + mu1 * (-2.0 + 3.0 * mu2))) +
              (1.0 - 2.0 * (s + p1 * (mu1 + p2 * (2.0 - 2.0 * mu1 - 4.0 * mu2 +
                                                  3.0 * mu1 * mu2)))) *
                  c2t) -
         0.5 * p1 * m1 *
             (k * (-4.0 + 3.0 * p1) * w +
              6.0 * (-1.0 + p1) * (-1.0 - 2.0 * p2 * m2 + p2 * p2 * m2)) *
             ss -
         0.5 * p2 * m2 *
             (4.0 * (1.0 + k) +
              (2.0 * (-1.0 + p2) +
               p1 * (2.0 + p2 * (-2.0 + k * (-2.0 + mu1)))) *
                  ss);

  // [(2 + k)(-1 + p2)^2 + p2 {4 + 3k - (2 + k) p2} mu2] and its printed
  // negative [-(2 + k)(-1 + p2)^2 + p2 {-4 - 3k + (2 + k) p2} mu2].
  const double g = (2.0 + k) * (-1.0 + p2) * (-1.0 + p2) +
                   p2 * (4.0 + 3.0 * k - (2.0 + k) * p2) * mu2;
  const double gn = -(2.0 + k) * (-1.0 + p2) * (-1.0 + p2) +
                    p2 * (-4.0 - 3.0 * k + (2.0 + k) * p2) * mu2;
  const double h = -1.0 + (-2.0 + p2) * p2 * m2;
  const double j = -(-1.0 + p2) * (-1.0 + p2) + (-3.0 + p2) * p2 * mu2;

  const double f1 = 2.0 * (2.0 * (-1.0 - (1.0 + k) * p2 * m2) +
                           p1 * p1 * m1 * g + p1 * m1 * gn +
                           (-1.0 + p1) * p1 * m1 * gn * c2t);
  const double f2 = (1.0 + (1.0 + k) * p2 * m2) * cc +
                    (1.0 + (1.0 + k) * p2 * m2 + p1 * m1 * g +
                     p1 * p1 * m1 * gn) *
                        ss;
  const double f3 =
      -2.0 * (-1.0 + p1) * (p1 * m1 * h + (-1.0 + p2) * p2 * m2) -
      k * (1.0 + s + p1 * p1 * m1 * j + p1 * x) +
      (-1.0 + p1) *
          (2.0 * (p1 * m1 * h + (-1.0 + p2) * p2 * m2) +
           k * ((-1.0 + p2) * (-1.0 + p2 * m2) + p1 * m1 * j)) *
          c2t;
  const double f4 =
      p2 * (-2.0 - (2.0 + k) * p2 * m2 + (2.0 + k) * mu2) * cc +
      (2.0 * p1 * (-1.0 + mu1 + p1 * m1 * h - p2 * (1.0 + (-2.0 + p2) * mu1) * m2) +
       k * (1.0 + p1 * (-2.0 + mu1 + p1 * m1 * j +
                        p2 * (2.0 - 2.0 * mu2 +
                              mu1 * (-2.0 + p2 + 3.0 * mu2 - p2 * mu2))))) *
          ss;
  t.b2 = -16.0 + f1 * f2 - f3 * f4;
  return t;
}

DampingTerms dp_damping(double theta, double k, double p1, double p2,
                        double mu1, double mu2) {
  const double c2t = std::cos(2.0 * theta);
  const double m1 = -1.0 + mu1;
  const double m2 = -1.0 + mu2;
  // p1 (-3 + 2 p1)(-1 + mu1) and p2 (-3 + 2 p2)(-1 + mu2) recur throughout.
  const double u1 = p1 * (-3.0 + 2.0 * p1) * m1;
  const double u2 = p2 * (-3.0 + 2.0 * p2) * m2;
  const double r2 = (3.0 - 2.0 * p2) * (3.0 - 2.0 * p2) * p2 * p2;
  DampingTerms t;

  t.a1 = 4.0 * (2.0 + k) * u1 * (-9.0 + 8.0 * u2) - 36.0 * (2.0 + k) * u2 +
         4.5 * k * (9.0 + (9.0 - 24.0 * p2 + 8.0 * p1 * (-3.0 + 4.0 * p2)) * c2t);

  t.a2 = 8.0 * (2.0 + k) * (u1 * (-9.0 + 8.0 * u2) - 9.0 * u2);

  t.b1 = 8.0 * (2.0 + k) * (2.0 + k) * r2 * (9.0 - 8.0 * u1) * (9.0 - 8.0 * u1) *
             (k * (-9.0 + 4.0 * u1) + 8.0 * u1 -
              k * (-3.0 + 4.0 * p1) * (-3.0 + 4.0 * p2) * c2t) +
         18.0 * (2.0 + k) * p2 * (-3.0 + 2.0 * p2) * (-9.0 + 8.0 * u1) * m2 *
             ((2.0 + k) * (9.0 - 8.0 * u1) +
              k * (-3.0 + 4.0 * p1) * (-3.0 + 4.0 * p2) * c2t);

  t.b2 = -72.0 * (2.0 + k) * p2 * (-3.0 + 2.0 * p2) *
             (4.0 * (-9.0 + 2.0 * u1) + k * (9.0 + 4.0 * u1)) *
             (-9.0 + 8.0 * u1) * m2 +
         16.0 * (2.0 + k) * (2.0 + k) * r2 * (9.0 - 8.0 * u1) *
             (9.0 - 8.0 * u1) * m2 * m2 +
         81.0 * (k * k * (-81.0 + 8.0 * u1 * (9.0 + 2.0 * u1)) +
                 64.0 * u1 * (-9.0 + u1) + 16.0 * k * u1 * (-9.0 + 4.0 * u1) +
                 k * k * (3.0 - 4.0 * p1) * (3.0 - 4.0 * p1) * (3.0 - 4.0 * p2) *
                     (3.0 - 4.0 * p2) * c2t * c2t);
  return t;
}

Moves ad_general_moves(double theta, double k, double p1, double p2, double mu1,
                       double mu2) {
  check_general(theta, k, p1, p2, mu1, mu2);
  const DampingTerms t = ad_damping(theta, k, p1, p2, mu1, mu2);
  const double cc = std::cos(theta) * std::cos(theta);
  return {checked_ratio(-k * cc + t.a1, -4.0 + t.a2, "amplitude-damping q1*"),
          checked_ratio(0.25 * k * cc - t.b1, 16.0 + t.b2,
                        "amplitude-damping q2*")};
}

Moves dp_general_moves(double theta, double k, double p1, double p2, double mu1,
                       double mu2, Transcription transcription) {
  check_general(theta, k, p1, p2, mu1, mu2);
  const DampingTerms t = dp_damping(theta, k, p1, p2, mu1, mu2);
  const double cc = std::cos(theta) * std::cos(theta);
  const double leader_constant =
      transcription == Transcription::kAsPublished ? 3244.0 : 324.0;
  return {checked_ratio(81.0 * k * cc + t.a1, leader_constant + t.a2,
                        "depolarizing q1*"),
          checked_ratio(6561.0 * k * cc + t.b1, 52488.0 + t.b2,
                        "depolarizing q2*")};
}

ClosedFormResult ad_unentangled(double p2, double mu2,
                                Transcription transcription) {
  check_unit(p2, "p2");
  check_unit(mu2, "mu2");
  const double v = p2 * (1.0 - mu2);
  ClosedFormResult r;
  r.q1_star = checked_ratio(1.0, 2.0 - 4.0 * v, "q1*");
  r.q2_star = checked_ratio(
      1.0 - 2.0 * v,
      2.0 * (2.0 - p2 * (6.0 - 5.0 * mu2 - p2 * (1.0 - mu2) * (5.0 - 8.0 * mu2))),
      "q2*");
  r.payoff_a = checked_ratio(1.0, 8.0 - 16.0 * v, "P_A");
  const double last = transcription == Transcription::kAsPublished
                          ? (8.0 * mu2 + 5.0)
                          : (8.0 * mu2 - 5.0);
  r.payoff_b = checked_ratio(
      1.0 - 2.0 * v,
      8.0 * (2.0 - p2 * (6.0 - 5.0 * mu2) + p2 * p2 * last * (mu2 - 1.0)),
      "P_B");
  return r;
}

ClosedFormResult ad_entangled(double p2, double mu2) {
  check_unit(p2, "p2");
  check_unit(mu2, "mu2");
  const double m2 = -1.0 + mu2;
  const double den = -7.0 + p2 * (28.0 - 26.0 * mu2) +
                     9.0 * std::pow(p2, 4) * m2 * m2 +
                     p2 * p2 * (-22.0 + 46.0 * mu2 - 23.0 * mu2 * mu2) -
                     6.0 * std::pow(p2, 3) * (2.0 - 5.0 * mu2 + 3.0 * mu2 * mu2);
  const double lead = -1.0 + p2 * (2.0 - 3.0 * mu2) + 3.0 * p2 * p2 * m2;
  ClosedFormResult r;
  r.q1_star = checked_ratio(1.0 - 3.0 * p2 * p2 * m2 - p2 * (2.0 - 3.0 * mu2),
                            4.0 - 8.0 * p2 * (1.0 - mu2), "q1*");
  r.q2_star = checked_ratio(
      (-1.0 + p2 * (2.0 + 3.0 * p2 * m2 - 3.0 * mu2)) * (1.0 + 2.0 * p2 * m2),
      den, "q2*");
  r.payoff_a =
      checked_ratio(lead * lead, 32.0 * (1.0 + 2.0 * p2 * m2), "P_A");
  r.payoff_b = checked_ratio(-(1.0 + 2.0 * p2 * m2) * lead * lead, 8.0 * den,
                             "P_B");
  return r;
}

Payoffs dp_unentangled_payoffs(double p2, double mu2) {
  check_unit(p2, "p2");
  check_unit(mu2, "mu2");
  const double m2 = -1.0 + mu2;
  const double u = p2 * (-3.0 + 2.0 * p2);
  const double lead = (3.0 - 2.0 * p2) * (3.0 - 2.0 * p2) *
                      (1.0 + 2.0 * p2 * m2) * (1.0 + 2.0 * p2 * m2);
  Payoffs p;
  p.a = -checked_ratio(lead, 24.0 * (-3.0 - 6.0 * p2 * m2 + 4.0 * p2 * p2 * m2),
                       "P_A");
  p.b = -checked_ratio(
      lead * (-3.0 + 2.0 * u * m2),
      48.0 * (9.0 + u * (10.0 + 2.0 * u * m2 * m2 - 9.0 * mu2)), "P_B");
  return p;
}

ClosedFormResult dp_unentangled(double p2, double mu2) {
  const Payoffs p = dp_unentangled_payoffs(p2, mu2);
  const Moves m =
      dp_general_moves(0.0, 1.0, 0.0, p2, 0.0, mu2, Transcription::kCorrected);
  ClosedFormResult r;
  r.q1_star = m.q1;
  r.q2_star = m.q1 * checked_ratio(p.b, p.a, "P_B / P_A");
  r.payoff_a = p.a;
  r.payoff_b = p.b;
  return r;
}

ClosedFormResult dp_entangled(double p2, double mu2) {
  check_unit(p2, "p2");
  check_unit(mu2, "mu2");
  const double m2 = -1.0 + mu2;
  const double u = p2 * (-3.0 + 2.0 * p2) * m2;
  const double den =
      63.0 + 8.0 * p2 * (-3.0 + 2.0 * p2) * (-9.0 + 2.0 * u) * m2;
  const double top = (3.0 - 4.0 * u) * (3.0 - 4.0 * u);
  ClosedFormResult r;
  r.q1_star = 0.5 + checked_ratio(3.0, 4.0 * (-3.0 + 2.0 * u), "q1*");
  r.q2_star = checked_ratio((-3.0 + 2.0 * u) * (-3.0 + 4.0 * u), den, "q2*");
  r.payoff_a = -checked_ratio(top, 96.0 * (-3.0 + 2.0 * u), "P_A");
  r.payoff_b = -checked_ratio(top * (-3.0 + 2.0 * u), 24.0 * den, "P_B");
  return r;
}

std::array<double, 4> pd_diagonals(double theta, double q1, double q2) {
  if (!(q1 >= 0.0) || !(q2 >= 0.0)) {
    throw InvalidInput("moves must be >= 0");
  }
  const double q12 = 1.0 / ((1.0 + q1) * (1.0 + q2));
  const double cc = std::cos(theta) * std::cos(theta);
  const double ss = std::sin(theta) * std::sin(theta);
  return {q12 * (cc + q1 * q2 * ss), q12 * (q2 * cc + q1 * ss),
          q12 * (q1 * cc + q2 * ss), q12 * (q1 * q2 * cc + ss)};
}

std::optional<ClosedFormResult> oracle(const GameConfig& cfg) {
  cfg.validate();
  // Phase damping leaves the game untouched, so its first use does not matter.
  const bool first_use_clean =
      cfg.use1.p == 0.0 || cfg.kind() == ChannelKind::kPhaseDamping;
  if (cfg.k != 1.0 || !first_use_clean) return std::nullopt;
  const bool unentangled = near(cfg.theta, 0.0);
  const bool entangled = near(cfg.theta, std::numbers::pi / 4.0);
  if (!unentangled && !entangled) return std::nullopt;
  const double p2 = cfg.use2.p;
  const double mu2 = cfg.use2.mu;
  switch (cfg.kind()) {
    case ChannelKind::kAmplitudeDamping:
      return unentangled ? ad_unentangled(p2, mu2) : ad_entangled(p2, mu2);
    case ChannelKind::kDepolarizing:
      return unentangled ? dp_unentangled(p2, mu2) : dp_entangled(p2, mu2);
    case ChannelKind::kPhaseDamping:
      return unentangled ? ad_unentangled(0.0, 0.0) : ad_entangled(0.0, 0.0);
  }
  return std::nullopt;
}

}  // namespace qstack
