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

#ifndef QSTACK_CLOSEDFORM_HPP_
#define QSTACK_CLOSEDFORM_HPP_

#include <array>
#include <optional>

#include "qstack/game.hpp"

namespace qstack {

// Analytic equilibria in the parameter slices where they are known. Long
// expressions are kept in their published term-by-term shape, unsimplified,
// so a mismatch against the numerical solver points at a specific term.
//
// Two published expressions carry a typo. Transcription selects between the
// text as published and the corrected version:
//   * the follower payoff for the unentangled amplitude-damping game has
//     (8 mu2 + 5) in its denominator where the move formula it comes from
//     implies (8 mu2 - 5);
//   * the general depolarizing leader move has 3244 where its own noiseless
//     and entangled limits require 324.
enum class Transcription { kAsPublished, kCorrected };

struct ClosedFormResult {
  double q1_star = 0.0;
  double q2_star = 0.0;
  std::optional<double> payoff_a;
  std::optional<double> payoff_b;

  // Equilibrium exists only when both moves are strictly positive.
  bool exists() const { return q1_star > 0.0 && q2_star > 0.0; }
};

// The damping functions of the general formulas:
//   q1* = (-k cos^2 theta + a1) / (-4 + a2)
//   q2* = (k cos^2 theta / 4 - b1) / (16 + b2)          (amplitude damping)
//   q1* = (81 k cos^2 theta + a1) / (324 + a2)
//   q2* = (6561 k cos^2 theta + b1) / (52488 + b2)      (depolarizing)
struct DampingTerms {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

DampingTerms ad_damping(double theta, double k, double p1, double p2,
                        double mu1, double mu2);
DampingTerms dp_damping(double theta, double k, double p1, double p2,
                        double mu1, double mu2);

// General moves for correlated amplitude damping on both uses.
// Throws SingularConfiguration on a vanishing denominator.
Moves ad_general_moves(double theta, double k, double p1, double p2, double mu1,
                       double mu2);

// General moves for correlated depolarizing on both uses. The 324 / 3244
// leader constant follows the transcription.
Moves dp_general_moves(double theta, double k, double p1, double p2, double mu1,
                       double mu2,
                       Transcription transcription = Transcription::kAsPublished);

// Amplitude damping, k = 1, noiseless first use, theta = 0.
ClosedFormResult ad_unentangled(
    double p2, double mu2,
    Transcription transcription = Transcription::kCorrected);

// Amplitude damping, k = 1, noiseless first use, theta = pi/4.
ClosedFormResult ad_entangled(double p2, double mu2);

// Depolarizing, k = 1, noiseless first use, theta = 0: equilibrium payoffs.
Payoffs dp_unentangled_payoffs(double p2, double mu2);

// As above with moves. The leader move comes from the corrected general
// formula; the follower move from q2 / q1 = P_B / P_A, which holds at any
// point of the game.
ClosedFormResult dp_unentangled(double p2, double mu2);

// Depolarizing, k = 1, noiseless first use, theta = pi/4.
ClosedFormResult dp_entangled(double p2, double mu2);

// Final-state populations under phase damping (any p, mu): the channel
// leaves them untouched. q12 = 1 / ((1 + q1)(1 + q2)).
std::array<double, 4> pd_diagonals(double theta, double q1, double q2);

// Closed form covering cfg, or nullopt. Covered: k = 1 with a noiseless first
// use, and theta in {0, pi/4} (phase damping at any noise level via the
// noiseless limit). Uses the corrected transcriptions.
std::optional<ClosedFormResult> oracle(const GameConfig& cfg);

}  // namespace qstack

#endif  // QSTACK_CLOSEDFORM_HPP_
