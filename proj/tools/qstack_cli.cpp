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

// qstack: equilibria of the quantum Stackelberg duopoly under correlated noise.
//
//   qstack --channel ad --p2 0.3 --mu2 0.5             one equilibrium row
//   qstack --channel dp --sweep theta=0:3.14159:61     a sweep
//   qstack --preset fig2 --output fig2.csv             a figure preset
//   qstack search threshold --channel ad --vary p2     threshold search
//   qstack report                                      closed-form cross-check
//
// Exit status: 0 success, 1 solver error, 2 usage error, 3 no threshold or
// crossing found, 4 I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qstack/closedform.hpp"
#include "qstack/crosscheck.hpp"
#include "qstack/equilibrium.hpp"
#include "qstack/errors.hpp"
#include "qstack/sweep.hpp"

namespace {

constexpr int kExitSolver = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string channel = "ad";
  double theta = 0.0;
  double k = 1.0;
  double p1 = 0.0;
  double mu1 = 0.0;
  double p2 = 0.0;
  double mu2 = 0.0;
  std::vector<std::string> sweeps;
  std::string preset;
  std::string output;
  bool oracle = false;
  bool compare = false;
  int threads = 0;
  qstack::SolverSettings settings;

  // search
  std::string search_kind;
  std::string vary;
  std::vector<double> bracket;
  int scan_points = 101;

  // report
  int samples = 24;
  std::uint64_t seed = 20260101;
  bool corrected = false;
};

qstack::GameConfig config_from(const Options& o) {
  qstack::GameConfig cfg = qstack::make_config(
      qstack::parse_channel_kind(o.channel), o.theta, o.k, o.p1, o.mu1, o.p2,
      o.mu2);
  cfg.validate();
  return cfg;
}

qstack::ResultSource source_from(const Options& o) {
  if (o.compare) return qstack::ResultSource::kCompare;
  if (o.oracle) return qstack::ResultSource::kOracle;
  return qstack::ResultSource::kNumerical;
}

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw qstack::IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close(const std::string& path) {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->close();
    if (!*file_) throw qstack::IoError("failed writing '" + path + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void report_oracle_coverage(const std::vector<qstack::SweepRow>& rows,
                            qstack::ResultSource source) {
  if (source == qstack::ResultSource::kNumerical) return;
  std::size_t uncovered = 0;
  for (const auto& r : rows) uncovered += r.closed ? 0 : 1;
  if (uncovered) {
    std::cerr << "qstack: " << uncovered << " of " << rows.size()
              << " points have no closed form; "
              << (source == qstack::ResultSource::kOracle
                      ? "numerical values used there\n"
                      : "oracle columns left empty there\n");
  }
}

int run_main(const Options& o) {
  const qstack::ResultSource source = source_from(o);
  std::vector<qstack::SweepRow> rows;
  if (!o.preset.empty()) {
    if (!o.sweeps.empty()) {
      throw qstack::InvalidInput("--preset and --sweep cannot be combined");
    }
    const qstack::Preset preset = qstack::make_preset(o.preset);
    std::cerr << "qstack: preset " << preset.name << ": " << preset.description
              << "\n";
    rows = qstack::run_preset(preset, source, o.settings, o.threads);
  } else if (!o.sweeps.empty()) {
    if (o.sweeps.size() > 2) {
      throw qstack::InvalidInput("at most two --sweep parameters");
    }
    qstack::SweepSpec spec;
    spec.base = config_from(o);
    for (const std::string& s : o.sweeps) {
      spec.axes.push_back(qstack::SweepAxis::parse(s));
    }
    spec.settings = o.settings;
    spec.source = source;
    spec.threads = o.threads;
    rows = qstack::run_sweep(spec);
  } else {
    o.settings.validate();
    rows = qstack::evaluate({config_from(o)}, o.settings, source, 1);
  }
  report_oracle_coverage(rows, source);
  Sink sink(o.output);
  qstack::write_csv(sink.stream(), rows, source);
  sink.close(o.output);
  return 0;
}

int run_search(const Options& o) {
  const qstack::GameConfig base = config_from(o);
  const qstack::Parameter parameter = qstack::parse_parameter(o.vary);
  std::pair<double, double> bracket;
  if (o.bracket.empty()) {
    bracket = qstack::default_bracket(parameter);
  } else {
    bracket = {o.bracket[0], o.bracket[1]};
  }
  const qstack::SearchKind kind = o.search_kind == "threshold"
                                      ? qstack::SearchKind::kThreshold
                                      : qstack::SearchKind::kCrossing;
  const qstack::SearchResult result =
      qstack::run_search(kind, base, parameter, bracket.first, bracket.second,
                         o.settings, o.scan_points);
  Sink sink(o.output);
  qstack::write_search_csv(sink.stream(), result);
  sink.close(o.output);
  return 0;
}

int run_report(const Options& o) {
  const qstack::Transcription t = o.corrected
                                      ? qstack::Transcription::kCorrected
                                      : qstack::Transcription::kAsPublished;
  const qstack::DiscrepancyReport slices = qstack::slice_reduction_report(t);
  const qstack::DiscrepancyReport general =
      qstack::general_form_report(o.samples, o.seed, t, o.settings);
  Sink sink(o.output);
  sink.stream() << slices.to_text() << "\n" << general.to_text();
  sink.close(o.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Equilibria of the quantum Stackelberg duopoly under "
               "correlated noise channels"};
  app.set_version_flag("--version", "qstack 1.0.0");

  app.add_option("--channel", o.channel, "Channel kind")
      ->check(CLI::IsMember({"ad", "pd", "dp"}))
      ->capture_default_str();
  app.add_option("--theta", o.theta, "Entanglement angle of the initial state")
      ->capture_default_str();
  app.add_option("--k", o.k, "Payoff constant")->capture_default_str();
  app.add_option("--p1", o.p1, "Decoherence of the first channel use")
      ->capture_default_str();
  app.add_option("--mu1", o.mu1, "Memory of the first channel use")
      ->capture_default_str();
  app.add_option("--p2", o.p2, "Decoherence of the second channel use")
      ->capture_default_str();
  app.add_option("--mu2", o.mu2, "Memory of the second channel use")
      ->capture_default_str();
  app.add_option("--sweep", o.sweeps,
                 "Swept parameter name=start:end:steps (repeatable, at most twice)");
  app.add_option("--preset", o.preset, "Figure preset fig1 .. fig7")
      ->check(CLI::IsMember(qstack::preset_names()));
  app.add_option("--output", o.output, "Output path (default: stdout)");
  auto* oracle_flag =
      app.add_flag("--oracle", o.oracle, "Report closed-form values where known");
  app.add_flag("--compare", o.compare,
               "Report numerical and closed-form values with differences")
      ->excludes(oracle_flag);
  app.add_option("--threads", o.threads, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* solver = app.add_option_group("Solver");
  solver->add_option("--q-max", o.settings.q_max, "Initial search bound")
      ->capture_default_str();
  solver->add_option("--grid", o.settings.grid_points, "Coarse grid size")
      ->capture_default_str();
  solver->add_option("--tol", o.settings.tolerance, "Refinement tolerance on q")
      ->capture_default_str();
  solver->add_option("--max-iter", o.settings.max_iterations,
                     "Golden-section iteration cap")
      ->capture_default_str();
  solver->add_option("--max-expansions", o.settings.max_expansions,
                     "Search-domain expansions before giving up")
      ->capture_default_str();

  auto* search = app.add_subcommand(
      "search", "Locate an existence threshold or a P_A = P_B crossing");
  search->fallthrough();
  search->add_option("kind", o.search_kind, "threshold or crossing")
      ->required()
      ->check(CLI::IsMember({"threshold", "crossing"}));
  search->add_option("--vary", o.vary, "Parameter to vary")
      ->required()
      ->check(CLI::IsMember({"theta", "k", "p1", "mu1", "p2", "mu2"}));
  search->add_option("--bracket", o.bracket, "Search interval LO HI")
      ->expected(2);
  search->add_option("--scan", o.scan_points,
                     "Scan points for crossing searches")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();

  auto* report = app.add_subcommand(
      "report", "Compare the general closed forms with the numerical solver");
  report->fallthrough();
  report->add_option("--samples", o.samples, "Random configurations per channel")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  report->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  report->add_flag("--corrected", o.corrected,
                   "Use the corrected depolarizing leader constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*search) return run_search(o);
    if (*report) return run_report(o);
    return run_main(o);
  } catch (const qstack::InvalidInput& e) {
    std::cerr << "qstack: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qstack::NoThreshold& e) {
    std::cerr << "qstack: no threshold: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const qstack::NoCrossing& e) {
    std::cerr << "qstack: no crossing: " << e.what() << "\n";
    return kExitNotFound;
  } catch (const qstack::IoError& e) {
    std::cerr << "qstack: I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "qstack: solver error: " << e.what() << "\n";
    return kExitSolver;
  }
}
