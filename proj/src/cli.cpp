// Copyright 2026 The rfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rfcorr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfcorr/correlations.hpp"
#include "rfcorr/oracle.hpp"

namespace rfcorr::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kNormalizationTolerance = 1e-9;
constexpr double kCertificationTolerance = 1e-3;

struct CliError {
  int code;
  std::string message;
};

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> bell_row(const BellSpectrum& s) {
  return {s[BellLabel::OnePlus], s[BellLabel::OneMinus], s[BellLabel::TwoPlus], s[BellLabel::TwoMinus]};
}

ordered_json spectrum_json(const BellSpectrum& s) {
  ordered_json j = ordered_json::array();
  for (double w : bell_row(s)) j.push_back(w);
  return j;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw CliError{kBadInput, "cannot open output file " + cfg.output};
  file << text;
  if (!file) throw CliError{kBadInput, "failed writing output file " + cfg.output};
}

void emit_table(const RunConfig& cfg, const Table& table, std::ostream& out) {
  emit(cfg, cfg.format == Format::Csv ? to_csv(table) : to_json(table), out);
}

std::vector<std::string> time_columns(const RunConfig& cfg) {
  if (cfg.g == 1.0) return {"tau"};
  return {"tau", "t"};
}

void push_time(const RunConfig& cfg, std::vector<double>& row, double tau) {
  row.push_back(tau);
  if (cfg.g != 1.0) row.push_back(FieldChannel{cfg.g, cfg.omega}.absolute_time(tau));
}

const std::vector<std::string> kCorrelationColumns = {
    "f", "lambda_1p", "lambda_1m", "lambda_2p", "lambda_2m", "c1", "c2", "c3", "T", "D", "C", "E"};

void push_correlations(std::vector<double>& row, double f, const BellSpectrum& lambda,
                       const CorrelationVector& c, const CorrelationReport& report) {
  row.push_back(f);
  for (double w : bell_row(lambda)) row.push_back(w);
  row.insert(row.end(), {c.c1, c.c2, c.c3, report.total, report.discord, report.classical,
                         report.entanglement.value_or(std::nan(""))});
}

Table trajectory(const RunConfig& cfg, const InitialState& initial) {
  Table table;
  table.columns = time_columns(cfg);
  table.columns.insert(table.columns.end(), kCorrelationColumns.begin(), kCorrelationColumns.end());
  const auto grid = uniform_grid(cfg.tau_max, cfg.steps);

  std::optional<BellSpectrum> bell;
  if (const auto* s = std::get_if<BellSpectrum>(&initial)) {
    bell = *s;
  } else {
    const auto& rho = std::get<Op4>(initial);
    const BellDecomposition dec = bell_spectrum_of(rho);
    if (dec.bell_diagonal()) {
      bell = dec.spectrum;
    } else if (!cfg.allow_oracle) {
      std::ostringstream msg;
      msg << "initial state is not Bell-diagonal (residual " << dec.residual
          << "); rerun with --allow-oracle for the numeric path";
      throw CliError{kUnsupportedAnalytic, msg.str()};
    }
  }

  SearchConfig search;
  search.seed = cfg.seed;
  for (double tau : grid) {
    std::vector<double> row;
    push_time(cfg, row, tau);
    const double f = mixing_fraction(tau);
    if (bell) {
      const BellSpectrum lambda = evolve_bell_spectrum(*bell, tau);
      push_correlations(row, f, lambda, c_vector_of(lambda), quantifier_report(lambda));
    } else {
      const Op4 rho = two_qubit_map(std::get<Op4>(initial), tau);
      push_correlations(row, f, bell_spectrum_of(rho).spectrum, correlation_c_vector(rho),
                        quantifier_report(rho, search));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

const BellSpectrum kFigureState(0.9, 0.1, 0.0, 0.0);

void append_nonmarkov(const RunConfig& cfg, Table& table) {
  const auto grid = uniform_grid(cfg.tau_max, cfg.steps);
  const NonMarkovTrace trace = nonmarkovianity_measure(grid, cfg.convention);
  table.columns.push_back("E_anc");
  table.columns.push_back("I_E");
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    table.rows[k].push_back(trace.ancilla_entanglement[k]);
    table.rows[k].push_back(trace.measure[k]);
  }
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  emit_table(cfg, trajectory(cfg, parse_initial(cfg.initial)), out);
  return kOk;
}

int cmd_figure2(const RunConfig& cfg, std::ostream& out) {
  emit_table(cfg, trajectory(cfg, kFigureState), out);
  return kOk;
}

int cmd_figure3(const RunConfig& cfg, std::ostream& out) {
  Table table = trajectory(cfg, kFigureState);
  append_nonmarkov(cfg, table);
  emit_table(cfg, table, out);
  return kOk;
}

int cmd_nonmarkov(const RunConfig& cfg, std::ostream& out) {
  const auto grid = uniform_grid(cfg.tau_max, cfg.steps);
  const NonMarkovTrace trace = nonmarkovianity_measure(grid, cfg.convention);
  Table table;
  table.columns = time_columns(cfg);
  table.columns.push_back("E_anc");
  table.columns.push_back("I_E");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> row;
    push_time(cfg, row, grid[k]);
    row.push_back(trace.ancilla_entanglement[k]);
    row.push_back(trace.measure[k]);
    table.rows.push_back(std::move(row));
  }
  emit_table(cfg, table, out);
  return kOk;
}

BellSpectrum require_bell(const InitialState& state) {
  if (const auto* s = std::get_if<BellSpectrum>(&state)) return *s;
  const BellDecomposition dec = bell_spectrum_of(std::get<Op4>(state));
  if (!dec.bell_diagonal()) {
    throw CliError{kUnsupportedAnalytic, "this command needs a Bell-diagonal initial state"};
  }
  return dec.spectrum;
}

int cmd_composition(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.tau1 >= 0.0) || !(cfg.tau1 < cfg.tau2)) {
    throw CliError{kBadInput, "composition needs 0 <= tau1 < tau2"};
  }
  const BellSpectrum initial = require_bell(parse_initial(cfg.initial));
  const BellSpectrum direct = evolve_bell_spectrum(initial, cfg.tau2);
  const BellSpectrum restarted =
      evolve_bell_spectrum(evolve_bell_spectrum(initial, cfg.tau1), cfg.tau2 - cfg.tau1);

  ordered_json j;
  j["initial"] = spectrum_json(initial);
  j["tau1"] = cfg.tau1;
  j["tau2"] = cfg.tau2;
  j["direct"] = spectrum_json(direct);
  j["restarted"] = spectrum_json(restarted);
  j["trace_distance"] = composition_violation(initial, cfg.tau1, cfg.tau2);
  emit(cfg, j.dump(2) + "\n", out);
  return kOk;
}

BellSpectrum random_bell_spectrum(std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::array<double, 4> w{};
  double sum = 0.0;
  for (double& x : w) {
    x = expo(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return BellSpectrum::normalized(w, 1e-12);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<BellSpectrum> states;
  if (!cfg.initial.empty()) {
    states.push_back(require_bell(parse_initial(cfg.initial)));
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < cfg.samples; ++k) states.push_back(random_bell_spectrum(rng));
  }

  SearchConfig search;
  search.seed = cfg.seed;

  struct Family {
    const char* name;
    double max_discrepancy = 0.0;
  };
  std::array<Family, 4> families = {Family{"classical"}, Family{"separable"}, Family{"product"},
                                    Family{"ree_closed_form"}};
  ordered_json failures = ordered_json::array();

  for (const BellSpectrum& lambda : states) {
    const Op4 rho = bell_spectrum_to_density(lambda);
    const double analytic[4] = {
        relative_entropy<4>(rho, closest_classical_bd(lambda)),
        relative_entropy<4>(rho, closest_separable_bd(lambda)),
        relative_entropy<4>(rho, closest_product(rho)),
        bell_entanglement(lambda),
    };
    const OracleResult separable = oracle_closest_separable_bd(lambda, search);
    const double oracle[4] = {
        oracle_closest_classical(rho, search).value,
        separable.value,
        oracle_closest_product(rho, search).value,
        separable.value,
    };
    for (std::size_t k = 0; k < families.size(); ++k) {
      const double gap = std::abs(oracle[k] - analytic[k]);
      families[k].max_discrepancy = std::max(families[k].max_discrepancy, gap);
      if (!(gap < kCertificationTolerance)) {
        ordered_json f;
        f["family"] = families[k].name;
        f["lambda"] = spectrum_json(lambda);
        f["analytic"] = analytic[k];
        f["oracle"] = oracle[k];
        failures.push_back(f);
      }
    }
  }

  ordered_json j;
  j["samples"] = states.size();
  j["seed"] = cfg.seed;
  j["tolerance_bits"] = kCertificationTolerance;
  ordered_json fam;
  for (const Family& f : families) fam[f.name] = {{"max_discrepancy", f.max_discrepancy}};
  j["families"] = fam;
  j["passed"] = failures.empty();
  j["failures"] = failures;
  emit(cfg, j.dump(2) + "\n", out);
  if (!failures.empty()) {
    err << "verify: " << failures.size() << " oracle/analytic discrepancies >= "
        << kCertificationTolerance << " bits\n";
    return kCertificationFailure;
  }
  return kOk;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kBadInput, "cannot read initial-state file " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<std::array<double, 4>> parse_inline_weights(const std::string& spec) {
  std::array<double, 4> w{};
  std::stringstream ss(spec);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k == 4) return std::nullopt;
    try {
      std::size_t used = 0;
      w[k] = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    ++k;
  }
  if (k != 4) return std::nullopt;
  return w;
}

BellSpectrum checked_weights(const std::array<double, 4>& w) {
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidInput("initial Bell weights must be non-negative");
  }
  return BellSpectrum::normalized(w, kNormalizationTolerance);
}

InitialState parse_initial_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("initial state is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("bell")) {
      const auto v = j.at("bell").get<std::vector<double>>();
      if (v.size() != 4) throw InvalidInput("\"bell\" needs exactly four weights");
      return checked_weights({v[0], v[1], v[2], v[3]});
    }
    if (j.contains("matrix")) {
      const auto& m = j.at("matrix");
      if (!m.is_array() || m.size() != 4) throw InvalidInput("\"matrix\" needs 4 rows");
      Op4 rho;
      for (int r = 0; r < 4; ++r) {
        if (!m[r].is_array() || m[r].size() != 4) throw InvalidInput("\"matrix\" rows need 4 entries");
        for (int c = 0; c < 4; ++c) {
          const auto pair = m[r][c].get<std::vector<double>>();
          if (pair.size() != 2) throw InvalidInput("matrix entries are [re, im] pairs");
          rho(r, c) = cplx(pair[0], pair[1]);
        }
      }
      const cplx tr = rho.trace();
      if (std::abs(tr - cplx(1.0, 0.0)) > kNormalizationTolerance) {
        throw InvalidInput("initial matrix trace differs from 1");
      }
      rho /= tr.real();
      require_density<4>(rho, "initial matrix");
      return rho;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed initial state: ") + e.what());
  }
  throw InvalidInput("initial state JSON needs a \"bell\" or \"matrix\" key");
}

}  // namespace

void RunConfig::validate() const {
  if (!(g > 0.0) || !std::isfinite(g)) throw CliError{kBadInput, "--g must be > 0"};
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw CliError{kBadInput, "--tau-max must be > 0"};
  if (steps < 2) throw CliError{kBadInput, "--steps must be >= 2"};
  if (samples < 1) throw CliError{kBadInput, "--samples must be >= 1"};
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) out += ',';
    out += table.columns[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  ordered_json j;
  j["columns"] = table.columns;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    ordered_json col = ordered_json::array();
    for (const auto& row : table.rows) {
      const double v = std::stod(format_number(row[c]));
      if (std::isfinite(v)) {
        col.push_back(v);
      } else {
        col.push_back(nullptr);
      }
    }
    j[table.columns[c]] = std::move(col);
  }
  return j.dump() + "\n";
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
  };
  if (!std::getline(in, line)) throw InvalidInput("parse_csv: missing header");
  table.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(std::stod(cell));
    if (row.size() != table.columns.size()) throw InvalidInput("parse_csv: ragged row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

InitialState parse_initial(const std::string& spec) {
  if (auto w = parse_inline_weights(spec)) return checked_weights(*w);
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return parse_initial_json(spec);
  return parse_initial_json(read_text(spec));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation dynamics of two qubits under local random external fields"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string convention = "rhp";
  std::string format = "csv";
  bool initial_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--g", cfg.g, "Coupling g (> 0); tau = g t");
    sub->add_option("--omega", cfg.omega,
                    "Qubit frequency; recorded only, the dynamics runs in the rotating frame");
    sub->add_option("--tau-max", cfg.tau_max, "Final dimensionless time g t");
    sub->add_option("--steps", cfg.steps, "Number of grid intervals");
    sub->add_option("--initial", cfg.initial,
                    "Bell weights \"l1p,l1m,l2p,l2m\", inline JSON, or a JSON file path")
        ->each([&](const std::string&) { initial_given = true; });
    sub->add_option("--convention", convention, "Non-Markovianity convention: rhp or literal")
        ->check(CLI::IsMember({"rhp", "literal"}));
    sub->add_option("--output", cfg.output, "Output path (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "Seed for oracle restarts and random samples");
  };

  auto* evolve = app.add_subcommand("evolve", "Correlation trajectory for an initial state");
  evolve->add_flag("--allow-oracle", cfg.allow_oracle,
                   "Use the numeric closest-classical search for non-Bell-diagonal states");
  auto* fig2 = app.add_subcommand("figure2", "T, D, C trajectory for weights (0.9, 0.1, 0, 0)");
  auto* fig3 = app.add_subcommand("figure3", "E, D and I_E trajectory for weights (0.9, 0.1, 0, 0)");
  auto* verify = app.add_subcommand("verify", "Certify closed-form closest states against brute-force search");
  verify->add_option("--samples", cfg.samples, "Number of seeded random Bell-diagonal states");
  auto* nonmarkov = app.add_subcommand("nonmarkov", "Ancilla entanglement and accumulated I_E");
  auto* composition = app.add_subcommand("composition", "Composition-law violation between tau1 and tau2");
  composition->add_option("--tau1", cfg.tau1, "Restart time")->required();
  composition->add_option("--tau2", cfg.tau2, "Final time")->required();
  for (auto* sub : {evolve, fig2, fig3, verify, nonmarkov, composition}) add_common(sub);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  cfg.convention = convention == "literal" ? NonMarkovConvention::Literal
                                           : NonMarkovConvention::IncreaseCounting;
  cfg.format = format == "json" ? Format::Json : Format::Csv;

  try {
    cfg.validate();
    if (evolve->parsed()) return cmd_evolve(cfg, out);
    if (fig2->parsed()) return cmd_figure2(cfg, out);
    if (fig3->parsed()) return cmd_figure3(cfg, out);
    if (nonmarkov->parsed()) return cmd_nonmarkov(cfg, out);
    if (composition->parsed()) return cmd_composition(cfg, out);
    if (verify->parsed()) {
      if (!initial_given) cfg.initial.clear();
      return cmd_verify(cfg, out, err);
    }
  } catch (const CliError& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace rfcorr::cli
