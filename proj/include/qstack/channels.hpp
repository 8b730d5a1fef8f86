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

#ifndef QSTACK_CHANNELS_HPP_
#define QSTACK_CHANNELS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "qstack/qcore.hpp"

namespace qstack {

enum class ChannelKind { kAmplitudeDamping, kPhaseDamping, kDepolarizing };

// Short names used on the command line and in CSV output: ad, pd, dp.
std::string_view to_string(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view name);

// One pass of the two-qubit state through a noisy channel with memory.
struct ChannelUse {
  ChannelKind kind = ChannelKind::kAmplitudeDamping;
  double p = 0.0;   // decoherence strength
  double mu = 0.0;  // probability that the noise is correlated

  // Throws InvalidInput unless 0 <= p, mu <= 1.
  void validate() const;
};

// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.
Matrix2 pauli(int index);

// Kraus set acting independently on each qubit.
//   AmplitudeDamping: E_m (x) E_n with E_0 = diag(1, sqrt(1-p)),
//                     E_1 = sqrt(p) |0><1|.
//   PhaseDamping:     sqrt(e_m e_n) sigma_m (x) sigma_n, m,n in {0,3},
//                     e_0 = 1-p, e_3 = p.
//   Depolarizing:     the same over m,n in {0..3}, e_0 = 1-p, e_{1,2,3} = p/3.
std::vector<Matrix4> uncorrelated_kraus(ChannelKind kind, double p);

// Kraus set acting identically on both qubits.
//   AmplitudeDamping: E_00 = diag(1, 1, 1, sqrt(1-p)), E_11 = sqrt(p) |00><11|.
//     This is the two-qubit decay |11> -> |00>; it matches the single-qubit
//     decay direction of uncorrelated_kraus and is the ordering for which the
//     known closed-form equilibria are reproduced.
//   PhaseDamping / Depolarizing: sqrt(e_l) sigma_l (x) sigma_l with the
//     weights of uncorrelated_kraus.
std::vector<Matrix4> correlated_kraus(ChannelKind kind, double p);

// Kraus set of the memory channel: {sqrt(1-mu) E^u} followed by {sqrt(mu) E^c}.
std::vector<Matrix4> memory_kraus(const ChannelUse& use);

// (1-mu) sum E^u rho E^u^dag + mu sum E^c rho E^c^dag.
DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelUse& use);

}  // namespace qstack

#endif  // QSTACK_CHANNELS_HPP_
