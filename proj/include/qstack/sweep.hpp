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

#ifndef QSTACK_SWEEP_HPP_
#define QSTACK_SWEEP_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qstack/closedform.hpp"
#include "qstack/equilibrium.hpp"

namespace qstack {

// One swept parameter: steps evenly spaced values from start to end inclusive.
struct SweepAxis {
  Parameter parameter = Parameter::kP2;
  double start = 0.0;
  double end = 1.0;
  int steps = 2;

  // "name=start:end:steps", e.g. "p2=0:1:101".
  static SweepAxis parse(std::string_view text);
  double value(int index) const;
  void validate() const;
};

// Which numbers fill the result columns.
enum class ResultSource {
  kNumerical,  // backward_induction
  kOracle,     // closed form where one covers the point, numerical elsewhere
  kCompare,    // numerical, plus oracle_* and absdiff_* columns
};

struct SweepSpec {
  GameConfig base;
  std::vector<SweepAxis> axes;  // one or two; the last varies fastest
  SolverSettings settings;
  ResultSource source = ResultSource::kNumerical;
  int threads = 0;  // 0: one per hardware thread

  void validate() const;
  // Grid points in lexicographic order.
  std::vector<GameConfig> points() const;
};

struct SweepRow {
  GameConfig cfg;
  EquilibriumResult numerical;
  std::optional<ClosedFormResult> closed;  // filled for kOracle / kCompare
};

// Evaluates every grid point, possibly concurrently; rows come back in grid
// order. A solver error aborts the sweep with an Error naming the point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Same for an explicit list of configurations.
std::vector<SweepRow> evaluate(const std::vector<GameConfig>& configs,
                               const SolverSettings& settings,
                               ResultSource source, int threads = 0);

// A named figure reproduction: one or more series concatenated in order.
struct Preset {
  std::string name;
  std::string description;
  std::vector<SweepSpec> series;
};

std::vector<std::string> preset_names();
// Throws InvalidInput for an unknown name.
Preset make_preset(std::string_view name);
std::vector<SweepRow> run_preset(const Preset& preset, ResultSource source,
                                 const SolverSettings& settings, int threads = 0);

// ---- CSV ----

// Shortest text for v that parses back to the same double (17 significant
// digits at most). Negative zero prints as 0. Throws NumericalDegradation for
// non-finite v.
std::string format_double(double v);

std::vector<std::string> csv_header(ResultSource source);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               ResultSource source);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a column; throws InvalidInput when absent.
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

// Parses comma-separated text with a mandatory header row. Throws IoError on
// ragged rows.
CsvTable read_csv(std::istream& in);

// ---- searches ----

enum class SearchKind { kThreshold, kCrossing };

struct SearchResult {
  SearchKind kind = SearchKind::kThreshold;
  Parameter parameter = Parameter::kP2;
  double value = 0.0;
  SweepRow row;  // equilibrium at value
};

// Default brackets: [0, pi] for theta, [0, 1] for p and mu. Throws
// InvalidInput for k without a bracket.
std::pair<double, double> default_bracket(Parameter parameter);

// Wraps existence_threshold / critical_point for one parameter of base.
SearchResult run_search(SearchKind kind, const GameConfig& base,
                        Parameter parameter, double lo, double hi,
                        const SolverSettings& settings = {},
                        int scan_points = 101);

// Header "search,vary,value" plus the standard columns; value to 6 decimals.
void write_search_csv(std::ostream& out, const SearchResult& result);

}  // namespace qstack

#endif  // QSTACK_SWEEP_HPP_
