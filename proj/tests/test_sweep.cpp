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

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "qstack/errors.hpp"
#include "qstack/sweep.hpp"

using qstack::ChannelKind;
using qstack::make_config;
using qstack::Parameter;
using qstack::ResultSource;
using qstack::SweepAxis;
using qstack::SweepSpec;

namespace {

SweepSpec small_spec(ResultSource source = ResultSource::kNumerical) {
  SweepSpec spec;
  spec.base = make_config(ChannelKind::kAmplitudeDamping, 0, 1, 0, 0, 0, 0.3);
  spec.axes = {SweepAxis::parse("p2=0:0.42:7")};
  spec.source = source;
  spec.threads = 2;
  return spec;
}

std::string to_csv(const std::vector<qstack::SweepRow>& rows, ResultSource source) {
  std::ostringstream os;
  qstack::write_csv(os, rows, source);
  return os.str();
}

}  // namespace

TEST_CASE("sweep axes parse and validate") {
  const SweepAxis a = SweepAxis::parse("theta=0:3.5:8");
  CHECK(a.parameter == Parameter::kTheta);
  CHECK(a.start == 0.0);
  CHECK(a.end == 3.5);
  CHECK(a.steps == 8);
  CHECK(a.value(0) == 0.0);
  CHECK(a.value(7) == 3.5);
  CHECK(a.value(2) == doctest::Approx(1.0));
  for (const char* bad : {"p2", "p2=0:1", "q1=0:1:3", "p2=a:1:3", "p2=0:1:x",
                          "p2=0:1:1", "p2=1:0:3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(SweepAxis::parse(bad), qstack::InvalidInput);
  }
}

TEST_CASE("grid points run in lexicographic order") {
  SweepSpec spec;
  spec.axes = {SweepAxis::parse("theta=0:1:3"), SweepAxis::parse("p2=0:0.2:2")};
  const auto pts = spec.points();
  REQUIRE(pts.size() == 6);
  const double want[6][2] = {{0, 0}, {0, 0.2}, {0.5, 0}, {0.5, 0.2}, {1, 0}, {1, 0.2}};
  for (int i = 0; i < 6; ++i) {
    CHECK(pts[i].theta == want[i][0]);
    CHECK(pts[i].use2.p == want[i][1]);
  }
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec = small_spec();
  CHECK_NOTHROW(spec.validate());
  spec.axes.clear();
  CHECK_THROWS_AS(spec.validate(), qstack::InvalidInput);
  spec.axes = {SweepAxis::parse("p2=0:1:2"), SweepAxis::parse("mu2=0:1:2"),
               SweepAxis::parse("theta=0:1:2")};
  CHECK_THROWS_AS(spec.validate(), qstack::InvalidInput);
  spec.axes = {SweepAxis::parse("p2=0:1:2"), SweepAxis::parse("p2=0:1:2")};
  CHECK_THROWS_AS(spec.validate(), qstack::InvalidInput);
  spec.axes = {SweepAxis::parse("p2=0:2:3")};
  CHECK_THROWS_AS(spec.validate(), qstack::InvalidInput);
}

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(qstack::format_double(0.0) == "0");
  CHECK(qstack::format_double(-0.0) == "0");
  CHECK(qstack::format_double(0.1) == "0.1");
  CHECK(qstack::format_double(0.125) == "0.125");
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n = 0; n < 2000; ++n) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(u(rng)));
    const std::string s = qstack::format_double(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(std::memcmp(&back, &v, sizeof v) == 0);
  }
}

TEST_CASE("CSV output has the fixed columns and parses back bit-exactly") {
  const SweepSpec spec = small_spec();
  const auto rows = qstack::run_sweep(spec);
  REQUIRE(rows.size() == 7);
  std::istringstream in(to_csv(rows, ResultSource::kNumerical));
  const qstack::CsvTable t = qstack::read_csv(in);
  const std::vector<std::string> want = {"channel", "theta", "k", "p1", "mu1", "p2",
                                         "mu2", "q1_star", "q2_star", "payoff_A",
                                         "payoff_B", "exists"};
  CHECK(t.header == want);
  REQUIRE(t.rows.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(t.rows[i][t.column("channel")] == "ad");
    CHECK(t.number(i, "p2") == rows[i].cfg.use2.p);
    CHECK(t.number(i, "q1_star") == rows[i].numerical.q1_star);
    CHECK(t.number(i, "q2_star") == rows[i].numerical.q2_star);
    CHECK(t.number(i, "payoff_A") == rows[i].numerical.payoff_a);
    CHECK(t.number(i, "payoff_B") == rows[i].numerical.payoff_b);
    CHECK(t.rows[i][t.column("exists")] ==
          (rows[i].numerical.exists ? "true" : "false"));
  }
  // The follower move stays finite up to p2 of about 0.58 at mu2 = 0.3.
  CHECK(t.rows.back()[t.column("exists")] == "true");
  CHECK_THROWS_AS(t.column("nope"), qstack::InvalidInput);
}

TEST_CASE("non-existent points keep their rows") {
  SweepSpec spec = small_spec();
  spec.base.use2.mu = 0.0;
  spec.axes = {SweepAxis::parse("p2=0.7:0.9:3")};
  const auto rows = qstack::run_sweep(spec);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK_FALSE(r.numerical.exists);
    CHECK(std::isfinite(r.numerical.q1_star));
    CHECK(std::isfinite(r.numerical.payoff_b));
  }
}

TEST_CASE("compare mode adds oracle and difference columns") {
  const auto rows = qstack::run_sweep(small_spec(ResultSource::kCompare));
  std::istringstream in(to_csv(rows, ResultSource::kCompare));
  const qstack::CsvTable t = qstack::read_csv(in);
  CHECK(t.header.size() == 21);
  CHECK(t.header[12] == "oracle_q1_star");
  CHECK(t.header.back() == "absdiff_payoff_B");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double diff = t.number(i, "absdiff_q1_star");
    CHECK(diff == std::abs(t.number(i, "q1_star") - t.number(i, "oracle_q1_star")));
    CHECK(diff < 1e-8);
    CHECK(t.number(i, "absdiff_payoff_B") < 1e-8);
  }
}

TEST_CASE("uncovered points leave oracle columns empty") {
  SweepSpec spec = small_spec(ResultSource::kCompare);
  spec.base.theta = 0.3;
  spec.axes = {SweepAxis::parse("p2=0:0.2:2")};
  std::istringstream in(to_csv(qstack::run_sweep(spec), ResultSource::kCompare));
  const qstack::CsvTable t = qstack::read_csv(in);
  CHECK(t.rows[0][t.column("oracle_q1_star")].empty());
  CHECK(t.rows[0][t.column("absdiff_payoff_A")].empty());
}

TEST_CASE("oracle mode reports closed-form values where covered") {
  const auto rows = qstack::run_sweep(small_spec(ResultSource::kOracle));
  std::istringstream in(to_csv(rows, ResultSource::kOracle));
  const qstack::CsvTable t = qstack::read_csv(in);
  CHECK(t.header.size() == 12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(rows[i].closed.has_value());
    CHECK(t.number(i, "q1_star") == rows[i].closed->q1_star);
  }
}

TEST_CASE("thread count does not change the output") {
  SweepSpec spec = small_spec(ResultSource::kCompare);
  spec.axes = {SweepAxis::parse("theta=0:3:5"), SweepAxis::parse("p2=0:0.4:3")};
  spec.threads = 1;
  const std::string one = to_csv(qstack::run_sweep(spec), spec.source);
  spec.threads = 3;
  const std::string three = to_csv(qstack::run_sweep(spec), spec.source);
  CHECK(one == three);
}

TEST_CASE("solver failures abort the sweep naming the point") {
  SweepSpec spec = small_spec();
  spec.base.use2.mu = 0.0;
  spec.axes = {SweepAxis::parse("p2=0.4:0.499:2")};
  spec.settings.max_expansions = 0;
  try {
    qstack::run_sweep(spec);
    FAIL("expected DomainExhausted");
  } catch (const qstack::DomainExhausted& e) {
    CHECK(std::string(e.what()).find("p2=0.499") != std::string::npos);
  }
}

TEST_CASE("ragged CSV is rejected") {
  std::istringstream in("a,b,c\n1,2,3\n4,5\n");
  CHECK_THROWS_AS(qstack::read_csv(in), qstack::IoError);
}

TEST_CASE("presets") {
  const auto names = qstack::preset_names();
  REQUIRE(names.size() == 7);
  CHECK(names.front() == "fig1");
  CHECK(names.back() == "fig7");
  CHECK_THROWS_AS(qstack::make_preset("fig8"), qstack::InvalidInput);

  const qstack::Preset f1 = qstack::make_preset("fig1");
  REQUIRE(f1.series.size() == 2);
  CHECK(f1.series[0].base.theta == doctest::Approx(std::numbers::pi / 4));
  CHECK(f1.series[0].base.use2.mu == 0.9);
  CHECK(f1.series[1].base.theta == 0.0);
  CHECK(f1.series[1].base.use2.mu == 0.7);
  CHECK(f1.series[0].axes[0].steps == 101);

  const qstack::Preset f2 = qstack::make_preset("fig2");
  CHECK(f2.series[0].axes[0].parameter == Parameter::kTheta);
  CHECK(f2.series[0].base.use1.p == 0.5);
  CHECK(f2.series[0].base.use2.mu == 0.5);

  for (const char* n : {"fig4", "fig5", "fig6", "fig7"}) {
    const qstack::Preset p = qstack::make_preset(n);
    CHECK(p.series.size() == 5);
    for (const SweepSpec& s : p.series) {
      CHECK(s.base.kind() == ChannelKind::kDepolarizing);
      CHECK(s.base.use1.p == 0.25);
      CHECK(s.base.use2.p == 0.25);
      CHECK(s.base.use1.mu == s.base.use2.mu);
      CHECK(s.axes[0].end == doctest::Approx(std::numbers::pi));
      CHECK_NOTHROW(s.validate());
    }
  }
}

TEST_CASE("searches") {
  const auto [lo, hi] = qstack::default_bracket(Parameter::kTheta);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(std::numbers::pi));
  CHECK(qstack::default_bracket(Parameter::kMu2).second == 1.0);
  CHECK_THROWS_AS(qstack::default_bracket(Parameter::kK), qstack::InvalidInput);

  const qstack::SearchResult r = qstack::run_search(
      qstack::SearchKind::kThreshold,
      make_config(ChannelKind::kDepolarizing, std::numbers::pi / 4, 1, 0, 0, 0, 0),
      Parameter::kP2, 0.0, 1.0);
  CHECK(std::abs(r.value - (3.0 - std::sqrt(3.0)) / 4.0) < 1e-8);
  std::ostringstream os;
  qstack::write_search_csv(os, r);
  std::istringstream in(os.str());
  const qstack::CsvTable t = qstack::read_csv(in);
  CHECK(t.header[0] == "search");
  CHECK(t.rows[0][0] == "threshold");
  CHECK(t.rows[0][1] == "p2");
  CHECK(t.rows[0][2] == "0.316987");
  CHECK(t.number(0, "p2") == r.value);

  CHECK_THROWS_AS(
      qstack::run_search(qstack::SearchKind::kCrossing,
                         make_config(ChannelKind::kDepolarizing, 0, 1, 0, 0, 0, 0),
                         Parameter::kP2, 0.0, 1.0, {}, 21),
      qstack::NoCrossing);
}
