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

#include "qstack/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "qstack/errors.hpp"

namespace qstack {

namespace {

bool usable(MaximumKind kind) {
  return kind == MaximumKind::kInterior || kind == MaximumKind::kAtZero;
}

std::string describe(const GameConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "channel=" << to_string(cfg.kind()) << " theta=" << cfg.theta
     << " k=" << cfg.k << " p1=" << cfg.use1.p << " mu1=" << cfg.use1.mu
     << " p2=" << cfg.use2.p << " mu2=" << cfg.use2.mu;
  return os.str();
}

struct EquilibriumVerdict {
  bool exists = false;
  double gap = 0.0;  // P_A - P_B
};

EquilibriumVerdict verdict(const ConfigFamily& family, double value,
                           const SolverSettings& settings) {
  const EquilibriumResult r = backward_induction(family(value), settings);
  return {r.exists, r.payoff_a - r.payoff_b};
}

}  // namespace

void SolverSettings::validate() const {
  if (!(q_max > 0.0) || !std::isfinite(q_max)) {
    throw InvalidInput("q_max must be a finite positive number");
  }
  if (grid_points < 3) throw InvalidInput("grid_points must be >= 3");
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (max_iterations < 1) throw InvalidInput("max_iterations must be >= 1");
  if (max_expansions < 0) throw InvalidInput("max_expansions must be >= 0");
  if (!(expansion_factor > 1.0) || !std::isfinite(expansion_factor)) {
    throw InvalidInput("expansion_factor must be a finite number > 1");
  }
  if (!(derivative_step > 0.0)) {
    throw InvalidInput("derivative_step must be positive");
  }
}

SearchSettings SolverSettings::search() const {
  SearchSettings s;
  s.grid_points = grid_points;
  s.tolerance = tolerance;
  s.max_iterations = max_iterations;
  s.derivative_step = derivative_step;
  return s;
}

BestResponse best_response(const CompiledGame& game, double q1,
                           const SolverSettings& settings) {
  const SearchSettings search = settings.search();
  const CompiledGame::FollowerPayoff objective = game.follower_payoff(q1);
  BestResponse out;
  double domain = settings.q_max;
  for (int attempt = 0;; ++attempt) {
    const Maximum1D m = maximize_on_interval(objective, domain, search);
    out.q2 = m.x;
    out.kind = m.kind;
    out.iterations = m.iterations;
    out.achieved_tolerance = m.achieved_tol;
    out.expansions = attempt;
    out.polished = m.polished;
    if (m.kind != MaximumKind::kExhausted || attempt >= settings.max_expansions) {
      return out;
    }
    domain *= settings.expansion_factor;
  }
}

double reaction(const GameConfig& cfg, double q1,
                const SolverSettings& settings) {
  settings.validate();
  if (!(q1 >= 0.0) || !std::isfinite(q1)) {
    throw InvalidInput("q1 must be a finite quantity >= 0");
  }
  const CompiledGame game(cfg);
  const BestResponse r = best_response(game, q1, settings);
  if (!usable(r.kind)) {
    std::ostringstream os;
    os.precision(17);
    os << "follower has no finite best response at q1=" << q1 << " ("
       << describe(cfg) << ")";
    throw DomainExhausted(os.str());
  }
  return r.q2;
}

EquilibriumResult backward_induction(const GameConfig& cfg,
                                     const SolverSettings& settings) {
  return backward_induction(CompiledGame(cfg), settings);
}

EquilibriumResult backward_induction(const CompiledGame& game,
                                     const SolverSettings& settings) {
  settings.validate();
  const SearchSettings search = settings.search();
  auto leader = [&game, &settings](double q1) {
    const BestResponse r = best_response(game, q1, settings);
    if (!usable(r.kind)) return std::numeric_limits<double>::quiet_NaN();
    return game.payoff_a(q1, r.q2);
  };

  EquilibriumResult out;
  Diagnostics& diag = out.diagnostics;
  double domain = settings.q_max;
  Maximum1D m;
  for (int attempt = 0;; ++attempt) {
    m = maximize_on_interval(leader, domain, search);
    diag.leader_expansions = attempt;
    diag.leader_domain = domain;
    if (m.kind != MaximumKind::kExhausted) break;
    if (attempt >= settings.max_expansions) {
      std::ostringstream os;
      os.precision(17);
      os << "leader optimum still rising at q1=" << domain << " after "
         << attempt << " domain expansions (" << describe(game.config())
         << ")";
      throw DomainExhausted(os.str());
    }
    domain *= settings.expansion_factor;
  }
  diag.leader_iterations = m.iterations;
  diag.leader_tolerance = m.achieved_tol;
  diag.leader_polished = m.polished;

  bool leader_ok = false;
  double q1 = 0.0;
  switch (m.kind) {
    case MaximumKind::kInterior:
      q1 = m.x;
      leader_ok = true;
      if (m.next_to_invalid && !m.polished) {
        diag.follower_diverges = true;
        leader_ok = false;
      }
      break;
    case MaximumKind::kAtZero:
      diag.leader_at_zero = true;
      break;
    case MaximumKind::kUnbounded:
      q1 = domain;
      diag.leader_unbounded = true;
      break;
    case MaximumKind::kInvalid:
    case MaximumKind::kExhausted:
      diag.follower_diverges = true;
      break;
  }

  const BestResponse r = best_response(game, q1, settings);
  double q2 = 0.0;
  if (usable(r.kind)) {
    q2 = r.q2;
  } else {
    diag.follower_diverges = true;
  }
  diag.follower_iterations = r.iterations;
  diag.follower_tolerance = r.achieved_tolerance;
  diag.follower_polished = r.polished;
  diag.follower_at_zero = r.kind == MaximumKind::kAtZero;

  const Payoffs p = game.payoffs(q1, q2);
  out.q1_star = q1;
  out.q2_star = q2;
  out.payoff_a = p.a;
  out.payoff_b = p.b;
  out.exists = leader_ok && r.kind == MaximumKind::kInterior && q1 > 0.0 &&
               q2 > 0.0;
  return out;
}

ConfigFamily vary(const GameConfig& base, Parameter parameter) {
  return [base, parameter](double value) {
    GameConfig cfg = base;
    set_parameter(cfg, parameter, value);
    return cfg;
  };
}

double existence_threshold(const ConfigFamily& family, double lo, double hi,
                           const SolverSettings& settings, double tol) {
  if (!(lo < hi)) throw InvalidInput("threshold bracket needs lo < hi");
  if (!(tol > 0.0)) throw InvalidInput("threshold tolerance must be positive");
  const bool at_lo = verdict(family, lo, settings).exists;
  const bool at_hi = verdict(family, hi, settings).exists;
  if (at_lo == at_hi) {
    std::ostringstream os;
    os << "equilibrium " << (at_lo ? "exists" : "is absent")
       << " at both ends of [" << lo << ", " << hi << "]";
    throw NoThreshold(os.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (verdict(family, mid, settings).exists == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> critical_points(const ConfigFamily& family, double lo,
                                    double hi, const SolverSettings& settings,
                                    int scan_points, double tol) {
  if (!(lo < hi)) throw InvalidInput("crossing bracket needs lo < hi");
  if (scan_points < 2) throw InvalidInput("scan_points must be >= 2");
  if (!(tol > 0.0)) throw InvalidInput("crossing tolerance must be positive");

  std::vector<double> xs(static_cast<std::size_t>(scan_points));
  std::vector<EquilibriumVerdict> vs(xs.size());
  for (int i = 0; i < scan_points; ++i) {
    xs[i] = (i == scan_points - 1)
                ? hi
                : lo + (hi - lo) * static_cast<double>(i) / (scan_points - 1);
    vs[i] = verdict(family, xs[i], settings);
  }

  std::vector<double> roots;
  for (int i = 0; i < scan_points; ++i) {
    if (vs[i].exists && vs[i].gap == 0.0) roots.push_back(xs[i]);
    if (i + 1 == scan_points) break;
    if (!vs[i].exists || !vs[i + 1].exists) continue;
    if (!((vs[i].gap < 0.0 && vs[i + 1].gap > 0.0) ||
          (vs[i].gap > 0.0 && vs[i + 1].gap < 0.0))) {
      continue;
    }
    double a = xs[i];
    double b = xs[i + 1];
    const bool negative_at_a = vs[i].gap < 0.0;
    bool abandoned = false;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      const EquilibriumVerdict v = verdict(family, mid, settings);
      if (!v.exists) {
        abandoned = true;  // the sign change straddles a non-existence gap
        break;
      }
      if ((v.gap < 0.0) == negative_at_a) {
        a = mid;
      } else {
        b = mid;
      }
    }
    if (!abandoned) roots.push_back(0.5 * (a + b));
  }
  return roots;
}

double critical_point(const ConfigFamily& family, double lo, double hi,
                      const SolverSettings& settings, int scan_points,
                      double tol) {
  const std::vector<double> roots =
      critical_points(family, lo, hi, settings, scan_points, tol);
  if (roots.empty()) {
    std::ostringstream os;
    os << "no P_A = P_B crossing at an existing equilibrium in [" << lo << ", "
       << hi << "]";
    throw NoCrossing(os.str());
  }
  return roots.front();
}

}  // namespace qstack
