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

#ifndef QSTACK_GAME_HPP_
#define QSTACK_GAME_HPP_

#include <array>
#include <string>
#include <string_view>

#include "qstack/channels.hpp"
#include "qstack/qcore.hpp"

namespace qstack {

// One configuration of the duopoly: initial entanglement, payoff constant and
// the two channel uses that bracket the firms' moves.
struct GameConfig {
  double theta = 0.0;
  double k = 1.0;
  ChannelUse use1;
  ChannelUse use2;

  // Throws InvalidInput on non-finite theta, k <= 0, an out-of-range channel
  // parameter or mismatched channel kinds.
  void validate() const;

  ChannelKind kind() const { return use1.kind; }
};

// Same kind on both uses; use1 = (p1, mu1), use2 = (p2, mu2).
GameConfig make_config(ChannelKind kind, double theta, double k, double p1,
                       double mu1, double p2, double mu2);

// Scalar knobs of a GameConfig that sweeps and searches can vary.
enum class Parameter { kTheta, kK, kP1, kMu1, kP2, kMu2 };

std::string to_string(Parameter parameter);
// Accepts theta, k, p1, mu1, p2, mu2. Throws InvalidInput otherwise.
Parameter parse_parameter(std::string_view name);
double get_parameter(const GameConfig& cfg, Parameter parameter);
void set_parameter(GameConfig& cfg, Parameter parameter, double value);

struct Moves {
  double q1 = 0.0;
  double q2 = 0.0;
};

struct Payoffs {
  double a = 0.0;
  double b = 0.0;
};

// x = 1 / (1 + q): probability that a firm plays the identity.
double mixing_probability(double q);

// Mixture of I and the bit flip C on each qubit, weighted by
// x = mixing_probability(q1) for firm A and y = mixing_probability(q2) for B.
DensityMatrix apply_strategies(const DensityMatrix& rho, double q1, double q2);

// initial_state -> use1 -> strategies -> use2, with full Kraus evaluation.
DensityMatrix final_state(const GameConfig& cfg, double q1, double q2);

// P_i = q_i (1 + q1)(1 + q2) (k rho_11 - rho_22 - rho_33) on the final state.
Payoffs payoffs(const GameConfig& cfg, double q1, double q2);

// Payoffs from given final-state populations.
Payoffs payoffs_from_diagonal(const std::array<double, 4>& diagonal, double k,
                              double q1, double q2);

// The pipeline is linear in the four strategy products xy, x(1-y), (1-x)y,
// (1-x)(1-y), so the final state is a fixed combination of four branch states
// (use2 applied to each flipped copy of use1's output). CompiledGame stores
// those branches once and evaluates states and payoffs without re-running the
// channels; solvers call payoffs() millions of times.
class CompiledGame {
 public:
  explicit CompiledGame(const GameConfig& cfg);

  const GameConfig& config() const { return cfg_; }

  DensityMatrix final_state(double q1, double q2) const;

  // (1+q1)(1+q2) times the mixture weights x y, x(1-y), (1-x)y, (1-x)(1-y)
  // is 1, q2, q1, q1 q2, so the scaled score needs no division.
  Payoffs payoffs(double q1, double q2) const {
    const double scaled =
        score_[0] + q2 * score_[1] + q1 * (score_[2] + q2 * score_[3]);
    return {q1 * scaled, q2 * scaled};
  }

  // P_B(q1, .) for a fixed q1 as a self-contained functor: the inner solver
  // evaluates it thousands of times per leader sample.
  struct FollowerPayoff {
    double base;   // scaled score at q2 = 0
    double slope;  // its increment per unit q2
    double operator()(double q2) const { return q2 * (base + q2 * slope); }
  };
  FollowerPayoff follower_payoff(double q1) const {
    return {score_[0] + q1 * score_[2], score_[1] + q1 * score_[3]};
  }

  double payoff_a(double q1, double q2) const { return payoffs(q1, q2).a; }
  double payoff_b(double q1, double q2) const { return payoffs(q1, q2).b; }

  // Branch order: (I,I), (I,C), (C,I), (C,C) for (firm A, firm B).
  const std::array<Matrix4, 4>& branches() const { return branches_; }

 private:
  GameConfig cfg_;
  std::array<Matrix4, 4> branches_;
  std::array<double, 4> score_{};  // k rho_11 - rho_22 - rho_33 per branch
};

}  // namespace qstack

#endif  // QSTACK_GAME_HPP_
