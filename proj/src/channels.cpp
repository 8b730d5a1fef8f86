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

#include "qstack/channels.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qstack/errors.hpp"

namespace qstack {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kAmplitudeDamping:
      return "ad";
    case ChannelKind::kPhaseDamping:
      return "pd";
    case ChannelKind::kDepolarizing:
      return "dp";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "ad") return ChannelKind::kAmplitudeDamping;
  if (name == "pd") return ChannelKind::kPhaseDamping;
  if (name == "dp") return ChannelKind::kDepolarizing;
  throw InvalidInput("unknown channel '" + std::string(name) +
                     "' (expected ad, pd or dp)");
}

namespace {

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidInput(std::string(name) + " must lie in [0, 1], got " +
                       std::to_string(value));
  }
}

// Pauli weights e_l and the indices that carry them.
struct PauliWeights {
  std::array<double, 4> e{};
  std::vector<int> indices;
};

PauliWeights pauli_weights(ChannelKind kind, double p) {
  PauliWeights w;
  if (kind == ChannelKind::kPhaseDamping) {
    w.e = {1.0 - p, 0.0, 0.0, p};
    w.indices = {0, 3};
  } else {
    w.e = {1.0 - p, p / 3.0, p / 3.0, p / 3.0};
    w.indices = {0, 1, 2, 3};
  }
  return w;
}

}  // namespace

void ChannelUse::validate() const {
  check_probability(p, "decoherence parameter p");
  check_probability(mu, "memory parameter mu");
}

Matrix2 pauli(int index) {
  const Complex i(0.0, 1.0);
  Matrix2 m;
  switch (index) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, -i, i, 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw InvalidInput("Pauli index must be 0..3");
  }
  return m;
}

std::vector<Matrix4> uncorrelated_kraus(ChannelKind kind, double p) {
  check_probability(p, "decoherence parameter p");
  std::vector<Matrix4> ops;
  if (kind == ChannelKind::kAmplitudeDamping) {
    Matrix2 e0, e1;
    e0 << 1, 0, 0, std::sqrt(1.0 - p);
    e1 << 0, std::sqrt(p), 0, 0;
    const std::array<Matrix2, 2> single = {e0, e1};
    for (const Matrix2& a : single) {
      for (const Matrix2& b : single) ops.push_back(kron(a, b));
    }
    return ops;
  }
  const PauliWeights w = pauli_weights(kind, p);
  for (int m : w.indices) {
    for (int n : w.indices) {
      ops.push_back(std::sqrt(w.e[m] * w.e[n]) * kron(pauli(m), pauli(n)));
    }
  }
  return ops;
}

std::vector<Matrix4> correlated_kraus(ChannelKind kind, double p) {
  check_probability(p, "decoherence parameter p");
  std::vector<Matrix4> ops;
  if (kind == ChannelKind::kAmplitudeDamping) {
    Matrix4 e00 = Matrix4::Identity();
    e00(3, 3) = std::sqrt(1.0 - p);
    Matrix4 e11 = Matrix4::Zero();
    e11(0, 3) = std::sqrt(p);
    ops.push_back(e00);
    ops.push_back(e11);
    return ops;
  }
  const PauliWeights w = pauli_weights(kind, p);
  for (int l : w.indices) {
    ops.push_back(std::sqrt(w.e[l]) * kron(pauli(l), pauli(l)));
  }
  return ops;
}

std::vector<Matrix4> memory_kraus(const ChannelUse& use) {
  use.validate();
  std::vector<Matrix4> ops;
  const double wu = std::sqrt(1.0 - use.mu);
  const double wc = std::sqrt(use.mu);
  for (const Matrix4& e : uncorrelated_kraus(use.kind, use.p)) {
    ops.push_back(wu * e);
  }
  for (const Matrix4& e : correlated_kraus(use.kind, use.p)) {
    ops.push_back(wc * e);
  }
  return ops;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelUse& use) {
  const std::vector<Matrix4> ops = memory_kraus(use);
  return apply_kraus(rho, ops);
}

}  // namespace qstack
