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

#ifndef QSTACK_EQUILIBRIUM_HPP_
#define QSTACK_EQUILIBRIUM_HPP_

#include <functional>
#include <vector>

#include "qstack/game.hpp"
#include "qstack/optimize.hpp"

namespace qstack {

struct SolverSettings {
  double q_max = 50.0;       // initial search domain [0, q_max]
  int grid_points = 2001;    // coarse grid size
  double tolerance = 1e-10;  // refinement tolerance on q
  int max_iterations = 200;  // golden-section iteration cap
  // A concave objective still rising at q_max triggers a retry on a domain
  // expansion_factor times larger, at most max_expansions times.
  int max_expansions = 8;
  double expansion_factor = 10.0;
  double derivative_step = 1e-6;  // slope test at q = 0

  // Throws InvalidInput unless q_max > 0, grid_points >= 3, tolerance > 0,
  // max_iterations >= 1, max_expansions >= 0, expansion_factor > 1.
  void validate() const;
  SearchSettings search() const;
};

struct Diagnostics {
  int leader_iterations = 0;
  int follower_iterations = 0;  // at the reported q1
  double leader_tolerance = 0.0;
  double follower_tolerance = 0.0;
  double leader_domain = 0.0;   // upper bound of the final leader search
  int leader_expansions = 0;
  bool leader_polished = false;
  bool follower_polished = false;
  bool leader_at_zero = false;     // unconstrained leader optimum is negative
  bool follower_at_zero = false;   // unconstrained follower optimum is negative
  bool leader_unbounded = false;   // leader payoff grows without bound
  bool follower_diverges = false;  // leader driven to where the follower has
                                   // no finite best response
};

struct EquilibriumResult {
  double q1_star = 0.0;
  double q2_star = 0.0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
  // Both moves strictly positive and interior. When false the fields above are
  // best-effort finite values clamped to the search domain.
  bool exists = false;
  Diagnostics diagnostics;
};

struct BestResponse {
  double q2 = 0.0;
  MaximumKind kind = MaximumKind::kInvalid;
  int iterations = 0;
  double achieved_tolerance = 0.0;
  int expansions = 0;
  bool polished = false;
};

// Follower's best response without throwing; kind says how the search ended.
BestResponse best_response(const CompiledGame& game, double q1,
                           const SolverSettings& settings = {});

// argmax over q2 >= 0 of P_B(q1, q2). Returns 0 when the unconstrained
// maximizer is negative. Throws DomainExhausted when no finite maximizer is
// found within the expanded domain, InvalidInput for q1 < 0.
double reaction(const GameConfig& cfg, double q1,
                const SolverSettings& settings = {});

// Leader maximizes P_A(q1, reaction(q1)). Throws DomainExhausted when the
// leader optimum keeps moving outward past the last expansion.
EquilibriumResult backward_induction(const GameConfig& cfg,
                                     const SolverSettings& settings = {});
EquilibriumResult backward_induction(const CompiledGame& game,
                                     const SolverSettings& settings = {});

// A one-parameter family of configurations.
using ConfigFamily = std::function<GameConfig(double)>;

// Family obtained by overwriting one parameter of base.
ConfigFamily vary(const GameConfig& base, Parameter parameter);

// Boundary between existing and non-existing equilibria in [lo, hi], located
// by bisection to width tol. Throws NoThreshold when both ends agree.
double existence_threshold(const ConfigFamily& family, double lo, double hi,
                           const SolverSettings& settings = {},
                           double tol = 1e-6);

// All values in [lo, hi] where P_A = P_B at an existing equilibrium. The
// interval is scanned at scan_points evenly spaced values; each sign change of
// P_A - P_B between two consecutive existing points is bisected to width tol.
// Sign changes across a non-existence gap are not crossings.
std::vector<double> critical_points(const ConfigFamily& family, double lo,
                                    double hi,
                                    const SolverSettings& settings = {},
                                    int scan_points = 101, double tol = 1e-6);

// First entry of critical_points. Throws NoCrossing when there is none.
double critical_point(const ConfigFamily& family, double lo, double hi,
                      const SolverSettings& settings = {},
                      int scan_points = 101, double tol = 1e-6);

}  // namespace qstack

#endif  // QSTACK_EQUILIBRIUM_HPP_
