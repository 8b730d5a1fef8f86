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

#include "qstack/game.hpp"

#include <cmath>
#include <string>

#include "qstack/errors.hpp"

namespace qstack {

namespace {

void check_move(double q, const char* name) {
  if (!(q >= 0.0) || std::isinf(q)) {
    throw InvalidInput(std::string(name) + " must be a finite quantity >= 0");
  }
}

const Matrix4& flip_a() {
  static const Matrix4 m = kron(pauli(1), pauli(0));
  return m;
}

const Matrix4& flip_b() {
  static const Matrix4 m = kron(pauli(0), pauli(1));
  return m;
}

const Matrix4& flip_both() {
  static const Matrix4 m = kron(pauli(1), pauli(1));
  return m;
}

double score(const Matrix4& rho, double k) {
  return k * rho(0, 0).real() - rho(1, 1).real() - rho(2, 2).real();
}

}  // namespace

void GameConfig::validate() const {
  if (!std::isfinite(theta)) {
    throw InvalidInput("entanglement angle theta must be finite");
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw InvalidInput("payoff constant k must be a finite positive number");
  }
  use1.validate();
  use2.validate();
  if (use1.kind != use2.kind) {
    throw InvalidInput("both channel uses must share one channel kind");
  }
}

GameConfig make_config(ChannelKind kind, double theta, double k, double p1,
                       double mu1, double p2, double mu2) {
  GameConfig cfg;
  cfg.theta = theta;
  cfg.k = k;
  cfg.use1 = {kind, p1, mu1};
  cfg.use2 = {kind, p2, mu2};
  return cfg;
}

std::string to_string(Parameter parameter) {
  switch (parameter) {
    case Parameter::kTheta: return "theta";
    case Parameter::kK: return "k";
    case Parameter::kP1: return "p1";
    case Parameter::kMu1: return "mu1";
    case Parameter::kP2: return "p2";
    case Parameter::kMu2: return "mu2";
  }
  return "?";
}

Parameter parse_parameter(std::string_view name) {
  if (name == "theta") return Parameter::kTheta;
  if (name == "k") return Parameter::kK;
  if (name == "p1") return Parameter::kP1;
  if (name == "mu1") return Parameter::kMu1;
  if (name == "p2") return Parameter::kP2;
  if (name == "mu2") return Parameter::kMu2;
  throw InvalidInput("unknown parameter '" + std::string(name) +
                     "' (expected theta, k, p1, mu1, p2 or mu2)");
}

double get_parameter(const GameConfig& cfg, Parameter parameter) {
  switch (parameter) {
    case Parameter::kTheta: return cfg.theta;
    case Parameter::kK: return cfg.k;
    case Parameter::kP1: return cfg.use1.p;
    case Parameter::kMu1: return cfg.use1.mu;
    case Parameter::kP2: return cfg.use2.p;
    case Parameter::kMu2: return cfg.use2.mu;
  }
  return 0.0;
}

void set_parameter(GameConfig& cfg, Parameter parameter, double value) {
  switch (parameter) {
    case Parameter::kTheta: cfg.theta = value; break;
    case Parameter::kK: cfg.k = value; break;
    case Parameter::kP1: cfg.use1.p = value; break;
    case Parameter::kMu1: cfg.use1.mu = value; break;
    case Parameter::kP2: cfg.use2.p = value; break;
    case Parameter::kMu2: cfg.use2.mu = value; break;
  }
}

double mixing_probability(double q) {
  if (!(q >= 0.0)) throw InvalidInput("quantity q must be >= 0");
  return 1.0 / (1.0 + q);
}

DensityMatrix apply_strategies(const DensityMatrix& rho, double q1, double q2) {
  check_move(q1, "q1");
  check_move(q2, "q2");
  const double x = mixing_probability(q1);
  const double y = mixing_probability(q2);
  const Matrix4& m = rho.matrix();
  // Pauli flips are Hermitian, so C^dag = C.
  const Matrix4 out = x * y * m + x * (1.0 - y) * flip_b() * m * flip_b() +
                      (1.0 - x) * y * flip_a() * m * flip_a() +
                      (1.0 - x) * (1.0 - y) * flip_both() * m * flip_both();
  return DensityMatrix::checked(out);
}

DensityMatrix final_state(const GameConfig& cfg, double q1, double q2) {
  cfg.validate();
  DensityMatrix rho = initial_state(cfg.theta);
  rho = apply_channel(rho, cfg.use1);
  rho = apply_strategies(rho, q1, q2);
  return apply_channel(rho, cfg.use2);
}

Payoffs payoffs_from_diagonal(const std::array<double, 4>& diagonal, double k,
                              double q1, double q2) {
  const double d = k * diagonal[0] - diagonal[1] - diagonal[2];
  const double inv_q12 = (1.0 + q1) * (1.0 + q2);
  return {q1 * inv_q12 * d, q2 * inv_q12 * d};
}

Payoffs payoffs(const GameConfig& cfg, double q1, double q2) {
  return payoffs_from_diagonal(final_state(cfg, q1, q2).diagonal(), cfg.k, q1,
                               q2);
}

CompiledGame::CompiledGame(const GameConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const DensityMatrix first =
      apply_channel(initial_state(cfg_.theta), cfg_.use1);
  const Matrix4& m = first.matrix();
  const std::array<Matrix4, 4> flipped = {
      m, flip_b() * m * flip_b(), flip_a() * m * flip_a(),
      flip_both() * m * flip_both()};
  for (int i = 0; i < 4; ++i) {
    branches_[i] = apply_channel(DensityMatrix(flipped[i]), cfg_.use2).matrix();
    score_[i] = score(branches_[i], cfg_.k);
  }
}

DensityMatrix CompiledGame::final_state(double q1, double q2) const {
  check_move(q1, "q1");
  check_move(q2, "q2");
  const double x = 1.0 / (1.0 + q1);
  const double y = 1.0 / (1.0 + q2);
  const Matrix4 out = x * y * branches_[0] + x * (1.0 - y) * branches_[1] +
                      (1.0 - x) * y * branches_[2] +
                      (1.0 - x) * (1.0 - y) * branches_[3];
  return DensityMatrix::checked(out);
}

}  // namespace qstack
