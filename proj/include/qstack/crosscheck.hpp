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

#ifndef QSTACK_CROSSCHECK_HPP_
#define QSTACK_CROSSCHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qstack/closedform.hpp"
#include "qstack/equilibrium.hpp"

namespace qstack {

// Largest deviation of one general closed-form output from a reference.
struct Discrepancy {
  std::string output;  // e.g. "amplitude damping q2*"
  std::string terms;   // damping terms the output depends on
  int samples = 0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  GameConfig worst;  // configuration of the largest relative error
  double worst_closed = 0.0;
  double worst_reference = 0.0;

  bool agrees(double rel_tol) const { return max_rel_error <= rel_tol; }
};

struct DiscrepancyReport {
  std::string title;
  double tolerance = 0.0;
  std::vector<Discrepancy> rows;

  bool all_agree() const;
  // Human-readable table; failing rows are marked and name their terms.
  std::string to_text() const;
};

// General closed forms restricted to the slices with dedicated formulas
// (k = 1, noiseless first use, theta = 0 or pi/4) against those formulas on
// an 11 x 11 (p2, mu2) grid over [0, 0.45] x [0, 1]. The depolarizing leader
// constant follows transcription.
DiscrepancyReport slice_reduction_report(
    Transcription transcription = Transcription::kAsPublished,
    double tolerance = 1e-12);

// General closed forms against backward_induction at random full-parameter
// points where the numerical equilibrium exists.
DiscrepancyReport general_form_report(
    int samples = 24, std::uint64_t seed = 20260101,
    Transcription transcription = Transcription::kAsPublished,
    const SolverSettings& settings = {}, double tolerance = 1e-6);

}  // namespace qstack

#endif  // QSTACK_CROSSCHECK_HPP_
