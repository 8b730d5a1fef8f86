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

#include "qstack/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "qstack/errors.hpp"

namespace qstack {

namespace {

struct Accumulator {
  Discrepancy d;

  void add(const GameConfig& cfg, double closed, double reference) {
    ++d.samples;
    const double abs_err = std::abs(closed - reference);
    const double rel_err =
        abs_err / std::max(std::abs(reference), 1e-300);
    d.max_abs_error = std::max(d.max_abs_error, abs_err);
    if (!(rel_err <= d.max_rel_error)) {  // also catches NaN
      d.max_rel_error =
          std::isnan(rel_err) ? std::numeric_limits<double>::infinity() : rel_err;
      d.worst = cfg;
      d.worst_closed = closed;
      d.worst_reference = reference;
    }
  }
};

Accumulator make(const std::string& output, const std::string& terms) {
  Accumulator a;
  a.d.output = output;
  a.d.terms = terms;
  return a;
}

std::string describe(const GameConfig& c) {
  std::ostringstream os;
  os.precision(6);
  os << to_string(c.kind()) << " theta=" << c.theta << " k=" << c.k
     << " p1=" << c.use1.p << " mu1=" << c.use1.mu << " p2=" << c.use2.p
     << " mu2=" << c.use2.mu;
  return os.str();
}

// A singular general formula counts as an infinite discrepancy.
Moves guarded(const std::function<Moves()>& f) {
  try {
    return f();
  } catch (const SingularConfiguration&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
}

constexpr const char* kAdLeaderTerms = "ad_damping a1, a2";
constexpr const char* kAdFollowerTerms = "ad_damping b1, b2";
constexpr const char* kDpLeaderTerms = "dp_damping a1, a2 and the 324 constant";
constexpr const char* kDpFollowerTerms = "dp_damping b1, b2";

}  // namespace

bool DiscrepancyReport::all_agree() const {
  return std::all_of(rows.begin(), rows.end(),
                     [this](const Discrepancy& d) { return d.agrees(tolerance); });
}

std::string DiscrepancyReport::to_text() const {
  std::ostringstream os;
  os << title << " (relative tolerance " << tolerance << ")\n";
  for (const Discrepancy& d : rows) {
    os.precision(3);
    os << (d.agrees(tolerance) ? "  ok    " : "  FAIL  ") << d.output
       << ": samples=" << d.samples << std::scientific
       << " max_abs=" << d.max_abs_error << " max_rel=" << d.max_rel_error
       << std::defaultfloat;
    if (!d.agrees(tolerance)) {
      os.precision(10);
      os << "\n        terms: " << d.terms << "\n        worst: "
         << describe(d.worst) << " closed=" << d.worst_closed
         << " reference=" << d.worst_reference;
    }
    os << "\n";
  }
  return os.str();
}

DiscrepancyReport slice_reduction_report(Transcription transcription,
                                         double tolerance) {
  Accumulator ad_u_q1 = make("amplitude damping q1*, theta=0", kAdLeaderTerms);
  Accumulator ad_u_q2 = make("amplitude damping q2*, theta=0", kAdFollowerTerms);
  Accumulator ad_e_q1 = make("amplitude damping q1*, theta=pi/4", kAdLeaderTerms);
  Accumulator ad_e_q2 =
      make("amplitude damping q2*, theta=pi/4", kAdFollowerTerms);
  Accumulator dp_e_q1 = make("depolarizing q1*, theta=pi/4", kDpLeaderTerms);
  Accumulator dp_e_q2 = make("depolarizing q2*, theta=pi/4", kDpFollowerTerms);

  const double quarter = std::numbers::pi / 4.0;
  for (int i = 0; i <= 10; ++i) {
    const double p2 = 0.045 * i;
    for (int j = 0; j <= 10; ++j) {
      const double mu2 = 0.1 * j;
      const GameConfig ad0 =
          make_config(ChannelKind::kAmplitudeDamping, 0.0, 1.0, 0.0, 0.0, p2, mu2);
      const GameConfig ad4 = make_config(ChannelKind::kAmplitudeDamping, quarter,
                                         1.0, 0.0, 0.0, p2, mu2);
      const GameConfig dp4 = make_config(ChannelKind::kDepolarizing, quarter,
                                         1.0, 0.0, 0.0, p2, mu2);
      const Moves g0 =
          guarded([&] { return ad_general_moves(0.0, 1.0, 0.0, p2, 0.0, mu2); });
      const ClosedFormResult s0 = ad_unentangled(p2, mu2);
      ad_u_q1.add(ad0, g0.q1, s0.q1_star);
      ad_u_q2.add(ad0, g0.q2, s0.q2_star);
      const Moves g4 = guarded(
          [&] { return ad_general_moves(quarter, 1.0, 0.0, p2, 0.0, mu2); });
      const ClosedFormResult s4 = ad_entangled(p2, mu2);
      ad_e_q1.add(ad4, g4.q1, s4.q1_star);
      ad_e_q2.add(ad4, g4.q2, s4.q2_star);
      const Moves d4 = guarded([&] {
        return dp_general_moves(quarter, 1.0, 0.0, p2, 0.0, mu2, transcription);
      });
      const ClosedFormResult e4 = dp_entangled(p2, mu2);
      dp_e_q1.add(dp4, d4.q1, e4.q1_star);
      dp_e_q2.add(dp4, d4.q2, e4.q2_star);
    }
  }
  DiscrepancyReport r;
  r.title = std::string("general closed forms on special slices (depolarizing "
                        "leader constant ") +
            (transcription == Transcription::kAsPublished ? "as published"
                                                          : "corrected") +
            ")";
  r.tolerance = tolerance;
  r.rows = {ad_u_q1.d, ad_u_q2.d, ad_e_q1.d, ad_e_q2.d, dp_e_q1.d, dp_e_q2.d};
  return r;
}

DiscrepancyReport general_form_report(int samples, std::uint64_t seed,
                                      Transcription transcription,
                                      const SolverSettings& settings,
                                      double tolerance) {
  Accumulator ad_q1 = make("amplitude damping q1*", kAdLeaderTerms);
  Accumulator ad_q2 = make("amplitude damping q2*", kAdFollowerTerms);
  Accumulator dp_q1 = make("depolarizing q1*", kDpLeaderTerms);
  Accumulator dp_q2 = make("depolarizing q2*", kDpFollowerTerms);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
  std::uniform_real_distribution<double> payoff_k(0.8, 1.5);
  std::uniform_real_distribution<double> noise(0.0, 0.4);
  std::uniform_real_distribution<double> memory(0.0, 1.0);

  for (const ChannelKind kind :
       {ChannelKind::kAmplitudeDamping, ChannelKind::kDepolarizing}) {
    int accepted = 0;
    // Draw until enough configurations with an existing equilibrium are seen;
    // the cap keeps a pathological seed from looping forever.
    for (int draws = 0; accepted < samples && draws < 20 * samples; ++draws) {
      const double theta = angle(rng);
      const double k = payoff_k(rng);
      const double p1 = noise(rng);
      const double mu1 = memory(rng);
      const double p2 = noise(rng);
      const double mu2 = memory(rng);
      const GameConfig cfg = make_config(kind, theta, k, p1, mu1, p2, mu2);
      const EquilibriumResult num = backward_induction(cfg, settings);
      if (!num.exists) continue;
      ++accepted;
      if (kind == ChannelKind::kAmplitudeDamping) {
        const Moves m = guarded(
            [&] { return ad_general_moves(theta, k, p1, p2, mu1, mu2); });
        ad_q1.add(cfg, m.q1, num.q1_star);
        ad_q2.add(cfg, m.q2, num.q2_star);
      } else {
        const Moves m = guarded([&] {
          return dp_general_moves(theta, k, p1, p2, mu1, mu2, transcription);
        });
        dp_q1.add(cfg, m.q1, num.q1_star);
        dp_q2.add(cfg, m.q2, num.q2_star);
      }
    }
  }
  DiscrepancyReport r;
  r.title = std::string("general closed forms against the numerical solver "
                        "(depolarizing leader constant ") +
            (transcription == Transcription::kAsPublished ? "as published"
                                                          : "corrected") +
            ")";
  r.tolerance = tolerance;
  r.rows = {ad_q1.d, ad_q2.d, dp_q1.d, dp_q2.d};
  return r;
}

}  // namespace qstack
