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

#include "qstack/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "qstack/errors.hpp"

namespace qstack {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidInput("cannot parse " + std::string(what) + " from '" +
                       std::string(text) + "'");
  }
  return v;
}

std::string describe_point(const GameConfig& c) {
  std::ostringstream os;
  os << "channel=" << to_string(c.kind()) << " theta=" << format_double(c.theta)
     << " k=" << format_double(c.k) << " p1=" << format_double(c.use1.p)
     << " mu1=" << format_double(c.use1.mu) << " p2=" << format_double(c.use2.p)
     << " mu2=" << format_double(c.use2.mu);
  return os.str();
}

// Keeps the error category (and so the CLI exit status) while adding context.
[[noreturn]] void rethrow_at(const std::exception_ptr& error,
                             const GameConfig& cfg) {
  const std::string where = " [at grid point " + describe_point(cfg) + "]";
  try {
    std::rethrow_exception(error);
  } catch (const InvalidInput& e) {
    throw InvalidInput(e.what() + where);
  } catch (const DomainExhausted& e) {
    throw DomainExhausted(e.what() + where);
  } catch (const NumericalDegradation& e) {
    throw NumericalDegradation(e.what() + where);
  } catch (const std::exception& e) {
    throw Error(e.what() + where);
  }
}

SweepRow evaluate_one(const GameConfig& cfg, const SolverSettings& settings,
                      ResultSource source) {
  SweepRow row;
  row.cfg = cfg;
  row.numerical = backward_induction(cfg, settings);
  if (source != ResultSource::kNumerical) {
    try {
      row.closed = oracle(cfg);
    } catch (const SingularConfiguration&) {
      row.closed.reset();  // the closed form is undefined exactly here
    }
  }
  return row;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct ResultFields {
  double q1, q2, pa, pb;
  bool exists;
};

ResultFields numerical_fields(const SweepRow& r) {
  return {r.numerical.q1_star, r.numerical.q2_star, r.numerical.payoff_a,
          r.numerical.payoff_b, r.numerical.exists};
}

bool has_oracle_payoffs(const SweepRow& r) {
  return r.closed && r.closed->payoff_a && r.closed->payoff_b;
}

ResultFields oracle_fields(const SweepRow& r) {
  return {r.closed->q1_star, r.closed->q2_star, *r.closed->payoff_a,
          *r.closed->payoff_b, r.closed->exists()};
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

std::vector<std::string> standard_fields(const SweepRow& r,
                                         const ResultFields& f) {
  const GameConfig& c = r.cfg;
  return {std::string(to_string(c.kind())), format_double(c.theta),
          format_double(c.k),      format_double(c.use1.p),
          format_double(c.use1.mu), format_double(c.use2.p),
          format_double(c.use2.mu), format_double(f.q1),
          format_double(f.q2),     format_double(f.pa),
          format_double(f.pb),     bool_text(f.exists)};
}

SweepSpec series(ChannelKind kind, double theta, double p1, double mu1,
                 double p2, double mu2, SweepAxis axis) {
  SweepSpec s;
  s.base = make_config(kind, theta, 1.0, p1, mu1, p2, mu2);
  s.axes = {axis};
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  for (const char ch : line) {
    if (ch == ',') {
      out.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell.push_back(ch);
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

// ---- axes and specs ----

SweepAxis SweepAxis::parse(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidInput("sweep must look like name=start:end:steps, got '" +
                       std::string(text) + "'");
  }
  SweepAxis axis;
  axis.parameter = parse_parameter(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  const std::size_t c1 = rest.find(':');
  const std::size_t c2 =
      c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw InvalidInput("sweep must look like name=start:end:steps, got '" +
                       std::string(text) + "'");
  }
  axis.start = parse_number(rest.substr(0, c1), "sweep start");
  axis.end = parse_number(rest.substr(c1 + 1, c2 - c1 - 1), "sweep end");
  const std::string_view steps = rest.substr(c2 + 1);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), n);
  if (ec != std::errc() || ptr != steps.data() + steps.size()) {
    throw InvalidInput("cannot parse sweep steps from '" + std::string(steps) +
                       "'");
  }
  axis.steps = n;
  axis.validate();
  return axis;
}

void SweepAxis::validate() const {
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw InvalidInput("sweep bounds must be finite");
  }
  if (steps < 2) throw InvalidInput("sweep needs at least 2 steps");
  if (start > end) throw InvalidInput("sweep start must not exceed end");
}

double SweepAxis::value(int index) const {
  if (index == steps - 1) return end;
  return start + (end - start) * static_cast<double>(index) / (steps - 1);
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) {
    throw InvalidInput("a sweep takes one or two swept parameters");
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
    throw InvalidInput("the two swept parameters must differ");
  }
  for (const SweepAxis& a : axes) a.validate();
  settings.validate();
  if (threads < 0) throw InvalidInput("threads must be >= 0");
  for (const GameConfig& c : points()) c.validate();
}

std::vector<GameConfig> SweepSpec::points() const {
  std::vector<GameConfig> out;
  if (axes.empty()) return out;
  const SweepAxis& outer = axes[0];
  for (int i = 0; i < outer.steps; ++i) {
    GameConfig c = base;
    set_parameter(c, outer.parameter, outer.value(i));
    if (axes.size() == 1) {
      out.push_back(c);
      continue;
    }
    const SweepAxis& inner = axes[1];
    for (int j = 0; j < inner.steps; ++j) {
      GameConfig d = c;
      set_parameter(d, inner.parameter, inner.value(j));
      out.push_back(d);
    }
  }
  return out;
}

// ---- evaluation ----

std::vector<SweepRow> evaluate(const std::vector<GameConfig>& configs,
                               const SolverSettings& settings,
                               ResultSource source, int threads) {
  settings.validate();
  const std::size_t n = configs.size();
  std::vector<SweepRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::size_t workers =
      threads > 0 ? static_cast<std::size_t>(threads)
                  : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(n, 1));

  // Every point is attempted, so the reported error (the first in grid
  // order) does not depend on thread scheduling.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = evaluate_one(configs[i], settings, source);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) rethrow_at(errors[i], configs[i]);
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  return evaluate(spec.points(), spec.settings, spec.source, spec.threads);
}

// ---- presets ----

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

Preset make_preset(std::string_view name) {
  constexpr double kPi = std::numbers::pi;
  const auto ad = ChannelKind::kAmplitudeDamping;
  const auto dp = ChannelKind::kDepolarizing;
  Preset p;
  p.name = std::string(name);
  if (name == "fig1") {
    p.description =
        "amplitude damping, payoffs against p2 (p1 = mu1 = 0): theta = pi/4 "
        "with mu2 = 0.9, then theta = 0 with mu2 = 0.7";
    const SweepAxis axis{Parameter::kP2, 0.0, 1.0, 101};
    p.series = {series(ad, kPi / 4.0, 0.0, 0.0, 0.0, 0.9, axis),
                series(ad, 0.0, 0.0, 0.0, 0.0, 0.7, axis)};
  } else if (name == "fig2") {
    p.description =
        "amplitude damping, equilibrium against theta in [0, pi] with "
        "p1 = p2 = mu1 = mu2 = 0.5";
    p.series = {series(ad, 0.0, 0.5, 0.5, 0.5, 0.5,
                       SweepAxis{Parameter::kTheta, 0.0, kPi, 101})};
  } else if (name == "fig3") {
    p.description =
        "depolarizing, payoffs against mu2 (p1 = mu1 = 0, p2 = 0.5): "
        "theta = 0, then theta = pi/4";
    const SweepAxis axis{Parameter::kMu2, 0.0, 1.0, 101};
    p.series = {series(dp, 0.0, 0.0, 0.0, 0.5, 0.0, axis),
                series(dp, kPi / 4.0, 0.0, 0.0, 0.5, 0.0, axis)};
  } else if (name == "fig4" || name == "fig5" || name == "fig6" ||
             name == "fig7") {
    static constexpr const char* kWhat[] = {"leader move q1*",
                                            "follower move q2*", "payoff P_A",
                                            "payoff P_B"};
    p.description = std::string("depolarizing, ") + kWhat[name[3] - '4'] +
                    " against theta in [0, pi] with p1 = p2 = 0.25 and "
                    "mu1 = mu2 in {0, 0.25, 0.5, 0.75, 1}";
    for (const double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      p.series.push_back(series(dp, 0.0, 0.25, mu, 0.25, mu,
                                SweepAxis{Parameter::kTheta, 0.0, kPi, 61}));
    }
  } else {
    throw InvalidInput("unknown preset '" + std::string(name) +
                       "' (expected fig1 .. fig7)");
  }
  return p;
}

std::vector<SweepRow> run_preset(const Preset& preset, ResultSource source,
                                 const SolverSettings& settings, int threads) {
  std::vector<GameConfig> configs;
  for (const SweepSpec& s : preset.series) {
    const std::vector<GameConfig> pts = s.points();
    configs.insert(configs.end(), pts.begin(), pts.end());
  }
  return evaluate(configs, settings, source, threads);
}

// ---- CSV ----

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw NumericalDegradation("non-finite value in CSV output");
  }
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  // Shortest text that round-trips: never more than 17 significant digits.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> csv_header(ResultSource source) {
  std::vector<std::string> h = {"channel", "theta",    "k",        "p1",
                                "mu1",     "p2",       "mu2",      "q1_star",
                                "q2_star", "payoff_A", "payoff_B", "exists"};
  if (source == ResultSource::kCompare) {
    for (const char* c : {"oracle_q1_star", "oracle_q2_star", "oracle_payoff_A",
                          "oracle_payoff_B", "oracle_exists", "absdiff_q1_star",
                          "absdiff_q2_star", "absdiff_payoff_A",
                          "absdiff_payoff_B"}) {
      h.emplace_back(c);
    }
  }
  return h;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows,
               ResultSource source) {
  write_row(out, csv_header(source));
  for (const SweepRow& r : rows) {
    const bool use_oracle =
        source == ResultSource::kOracle && has_oracle_payoffs(r);
    std::vector<std::string> f =
        standard_fields(r, use_oracle ? oracle_fields(r) : numerical_fields(r));
    if (source == ResultSource::kCompare) {
      if (has_oracle_payoffs(r)) {
        const ResultFields o = oracle_fields(r);
        const ResultFields n = numerical_fields(r);
        for (const double v : {o.q1, o.q2, o.pa, o.pb}) {
          f.push_back(format_double(v));
        }
        f.push_back(bool_text(o.exists));
        f.push_back(format_double(std::abs(n.q1 - o.q1)));
        f.push_back(format_double(std::abs(n.q2 - o.q2)));
        f.push_back(format_double(std::abs(n.pa - o.pa)));
        f.push_back(format_double(std::abs(n.pb - o.pb)));
      } else {
        f.insert(f.end(), 9, std::string());
      }
    }
    write_row(out, f);
  }
  if (!out) throw IoError("failed to write CSV output");
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw InvalidInput("CSV has no column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  return parse_number(rows.at(row).at(column(name)), name);
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("CSV input is empty");
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells = split(line);
    if (cells.size() != t.header.size()) {
      throw IoError("CSV line " + std::to_string(lineno) + " has " +
                    std::to_string(cells.size()) + " fields, expected " +
                    std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// ---- searches ----

std::pair<double, double> default_bracket(Parameter parameter) {
  switch (parameter) {
    case Parameter::kTheta:
      return {0.0, std::numbers::pi};
    case Parameter::kK:
      throw InvalidInput("searching over k needs an explicit --bracket");
    default:
      return {0.0, 1.0};
  }
}

SearchResult run_search(SearchKind kind, const GameConfig& base,
                        Parameter parameter, double lo, double hi,
                        const SolverSettings& settings, int scan_points) {
  base.validate();
  settings.validate();
  const ConfigFamily family = vary(base, parameter);
  SearchResult r;
  r.kind = kind;
  r.parameter = parameter;
  // The value is printed to 6 decimals; locating it to 1e-9 keeps that last
  // digit correctly rounded.
  constexpr double kSearchTolerance = 1e-9;
  r.value = kind == SearchKind::kThreshold
                ? existence_threshold(family, lo, hi, settings, kSearchTolerance)
                : critical_point(family, lo, hi, settings, scan_points,
                                 kSearchTolerance);
  r.row = evaluate_one(family(r.value), settings, ResultSource::kNumerical);
  return r;
}

void write_search_csv(std::ostream& out, const SearchResult& result) {
  std::vector<std::string> header = {"search", "vary", "value"};
  const std::vector<std::string> rest = csv_header(ResultSource::kNumerical);
  header.insert(header.end(), rest.begin(), rest.end());
  write_row(out, header);
  char value[64];
  std::snprintf(value, sizeof value, "%.6f", result.value);
  std::vector<std::string> f = {
      result.kind == SearchKind::kThreshold ? "threshold" : "crossing",
      to_string(result.parameter), value};
  const std::vector<std::string> fields =
      standard_fields(result.row, numerical_fields(result.row));
  f.insert(f.end(), fields.begin(), fields.end());
  write_row(out, f);
  if (!out) throw IoError("failed to write CSV output");
}

}  // namespace qstack
