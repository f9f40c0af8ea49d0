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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "rfcorr/cli.hpp"
#include "rfcorr/correlations.hpp"
#include "rfcorr/nonmarkov.hpp"

using namespace rfcorr;
using std::numbers::pi;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rfcorr");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t column(const cli::Table& t, const std::string& name) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (t.columns[k] == name) return k;
  }
  FAIL("missing column " << name);
  return 0;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("rfcorr_test_" + name);
  std::ofstream(path) << content;
  return path;
}

constexpr double kOneMinusH09 = 0.5310044064107189;

}  // namespace

TEST_CASE("evolve with the default grid") {
  const Result r = run_cli({"evolve"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"tau", "f", "lambda_1p", "lambda_1m", "lambda_2p",
                                               "lambda_2m", "c1", "c2", "c3", "T", "D", "C", "E"});
  REQUIRE(t.rows.size() == 2001);
  const auto& first = t.rows.front();
  CHECK(std::abs(first[column(t, "T")] - 1.5310) < 1e-4);
  CHECK(std::abs(first[column(t, "D")] - 0.5310) < 1e-4);
  CHECK(std::abs(first[column(t, "C")] - 1.0) < 1e-12);
  CHECK(std::abs(first[column(t, "E")] - 0.5310) < 1e-4);

  const auto& quarter = t.rows[500];
  CHECK(std::abs(quarter[0] - pi / 4) < 1e-11);
  CHECK(std::abs(quarter[column(t, "D")]) < 1e-9);
  CHECK(std::abs(quarter[column(t, "E")]) < 1e-9);
}

TEST_CASE("evolve on the maximally mixed state gives zero correlations") {
  const Result r = run_cli({"evolve", "--initial", "0.25,0.25,0.25,0.25", "--steps", "50"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  for (const auto& row : t.rows)
    for (const char* name : {"c1", "c2", "c3", "T", "D", "C", "E"}) CHECK(std::abs(row[column(t, name)]) < 1e-12);
}

TEST_CASE("output is deterministic and uses the agreed CSV layout") {
  const Result a = run_cli({"figure3", "--steps", "300"});
  const Result b = run_cli({"figure3", "--steps", "300"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
  CHECK(a.out.find(';') == std::string::npos);
  // 12 significant digits.
  CHECK(a.out.find("1.53100440641,") != std::string::npos);
}

TEST_CASE("CSV round trip reproduces the quantifiers from the weight columns") {
  const Result r = run_cli({"evolve", "--initial", "0.6,0.05,0.3,0.05", "--steps", "400", "--tau-max", "3"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  const std::size_t l0 = column(t, "lambda_1p");
  for (const auto& row : t.rows) {
    const BellSpectrum lam = BellSpectrum::normalized({row[l0], row[l0 + 1], row[l0 + 2], row[l0 + 3]}, 1e-9);
    const CorrelationReport rep = quantifier_report(lam);
    CHECK(std::abs(rep.total - row[column(t, "T")]) < 1e-9);
    CHECK(std::abs(rep.discord - row[column(t, "D")]) < 1e-9);
    CHECK(std::abs(rep.classical - row[column(t, "C")]) < 1e-9);
    CHECK(std::abs(*rep.entanglement - row[column(t, "E")]) < 1e-9);
  }
}

TEST_CASE("absolute time column appears only for g != 1") {
  const Result r = run_cli({"evolve", "--g", "2", "--steps", "10", "--omega", "7"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  REQUIRE(t.columns.size() > 2);
  CHECK(t.columns[1] == "t");
  CHECK(t.rows[10][1] == doctest::Approx(t.rows[10][0] / 2.0));
}

TEST_CASE("JSON output mirrors the CSV columns") {
  const Result csv = run_cli({"nonmarkov", "--steps", "20"});
  const Result js = run_cli({"nonmarkov", "--steps", "20", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  const cli::Table t = cli::parse_csv(csv.out);
  REQUIRE(j["columns"].get<std::vector<std::string>>() == t.columns);
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    const auto col = j[t.columns[c]].get<std::vector<double>>();
    REQUIRE(col.size() == t.rows.size());
    for (std::size_t k = 0; k < col.size(); ++k) CHECK(col[k] == t.rows[k][c]);
  }
}

TEST_CASE("figure2 shows the discord/classical transition") {
  const Result r = run_cli({"figure2", "--tau-max", "1.5707963267948966", "--steps", "2000"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  std::vector<double> tau, d, c;
  for (const auto& row : t.rows) {
    tau.push_back(row[0]);
    d.push_back(row[column(t, "D")]);
    c.push_back(row[column(t, "C")]);
  }
  const double step = tau[1] - tau[0];
  const IntervalSet dz = detect_frozen_intervals(tau, d);
  const IntervalSet cz = detect_frozen_intervals(tau, c);
  REQUIRE_FALSE(dz.empty());
  REQUIRE_FALSE(cz.empty());
  CHECK(std::abs(dz.front().end - 0.2318238) <= step);
  CHECK(std::abs(cz.front().start - 0.2318238) <= step);
}

TEST_CASE("figure3 adds the ancilla columns") {
  const Result r = run_cli({"figure3"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  CHECK(t.columns.back() == "I_E");
  CHECK(t.columns[t.columns.size() - 2] == "E_anc");
  std::vector<double> tau, e;
  for (const auto& row : t.rows) {
    tau.push_back(row[0]);
    e.push_back(row[column(t, "E")]);
    if (row[0] <= pi / 4 + 1e-12) CHECK(row[column(t, "I_E")] == 0.0);
  }
  const IntervalSet death = detect_death_revival(tau, e);
  REQUIRE(death.size() == 2);
  CHECK(std::abs(death[0].start - 0.6155) < 1e-3);
  CHECK(std::abs(death[0].end - 0.9553) < 1e-3);

  const Result lit = run_cli({"figure3", "--convention", "literal", "--steps", "1000"});
  REQUIRE(lit.code == 0);
  const cli::Table lt = cli::parse_csv(lit.out);
  CHECK(std::abs(lt.rows[250][column(lt, "I_E")] - 2.0) < 1e-3);  // tau = pi/4
}

TEST_CASE("nonmarkov defaults") {
  const Result r = run_cli({"nonmarkov"});
  REQUIRE(r.code == 0);
  const cli::Table t = cli::parse_csv(r.out);
  CHECK(t.columns == std::vector<std::string>{"tau", "E_anc", "I_E"});
  CHECK(std::abs(t.rows[1000][0] - pi / 2) < 1e-11);
  CHECK(std::abs(t.rows[1000][2] - 2.0) < 1e-3);
}

TEST_CASE("composition report") {
  const Result r = run_cli({"composition", "--tau1", "0.7853981633974483", "--tau2", "1.5707963267948966"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["trace_distance"].get<double>() - 0.5) < 1e-12);
  CHECK(j["restarted"][0].get<double>() == doctest::Approx(0.45));
  CHECK(j["direct"][0].get<double>() == doctest::Approx(0.9));

  const Result flat = run_cli({"composition", "--initial", "0.25,0.25,0.25,0.25", "--tau1", "0.3", "--tau2", "2"});
  REQUIRE(flat.code == 0);
  CHECK(nlohmann::json::parse(flat.out)["trace_distance"].get<double>() < 1e-12);

  CHECK(run_cli({"composition", "--tau1", "1", "--tau2", "1"}).code == 2);
  CHECK(run_cli({"composition", "--tau1", "2", "--tau2", "1"}).code == 2);
}

TEST_CASE("verify") {
  const Result one = run_cli({"verify", "--initial", "0.9,0.1,0,0"});
  REQUIRE(one.code == 0);
  const auto j = nlohmann::json::parse(one.out);
  CHECK(j["samples"] == 1);
  CHECK(j["families"]["classical"]["max_discrepancy"].get<double>() < 1e-3);
  CHECK(j["passed"] == true);

  const Result mixed = run_cli({"verify", "--initial", "0.25,0.25,0.25,0.25"});
  REQUIRE(mixed.code == 0);
  const auto m = nlohmann::json::parse(mixed.out);
  for (const char* fam : {"classical", "separable", "product"}) {
    CHECK(m["families"][fam]["max_discrepancy"].get<double>() < 1e-12);
  }

  const Result few = run_cli({"verify", "--samples", "5", "--seed", "7"});
  CHECK(few.code == 0);
  CHECK(nlohmann::json::parse(few.out)["samples"] == 5);
  CHECK(run_cli({"verify", "--samples", "5", "--seed", "7"}).out == few.out);
}

TEST_CASE("initial-state files") {
  const auto bell = temp_file("bell.json", R"({"bell": [0.9, 0.1, 0, 0]})");
  const Result a = run_cli({"evolve", "--initial", bell.string(), "--steps", "20"});
  const Result b = run_cli({"evolve", "--steps", "20"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  // 0.9|1+><1+| + 0.1|1-><1-| written out in the computational basis.
  const auto matrix = temp_file("matrix.json", R"({"matrix": [
      [[0,0],[0,0],[0,0],[0,0]],
      [[0,0],[0.5,0],[0.4,0],[0,0]],
      [[0,0],[0.4,0],[0.5,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]]]})");
  const Result c = run_cli({"evolve", "--initial", matrix.string(), "--steps", "20"});
  REQUIRE(c.code == 0);
  const cli::Table tb = cli::parse_csv(b.out);
  const cli::Table tc = cli::parse_csv(c.out);
  for (std::size_t k = 0; k < tb.rows.size(); ++k)
    for (std::size_t col = 0; col < tb.columns.size(); ++col)
      CHECK(std::abs(tb.rows[k][col] - tc.rows[k][col]) < 1e-10);

  const Result inline_json = run_cli({"evolve", "--initial", R"({"bell": [0.9, 0.1, 0, 0]})", "--steps", "20"});
  CHECK(inline_json.out == b.out);
}

TEST_CASE("input errors map to exit codes") {
  CHECK(run_cli({"evolve", "--initial", "/nonexistent/state.json"}).code == 2);
  CHECK(run_cli({"evolve", "--initial", "0.5,0.5,0.5,0"}).code == 2);
  CHECK(run_cli({"evolve", "--initial", "0.9,-0.1,0.2,0"}).code == 2);
  CHECK(run_cli({"evolve", "--steps", "1"}).code == 2);
  CHECK(run_cli({"evolve", "--tau-max", "-1"}).code == 2);
  CHECK(run_cli({"evolve", "--g", "0"}).code == 2);
  CHECK(run_cli({"evolve", "--convention", "bogus"}).code == 2);
  CHECK(run_cli({"nosuchcommand"}).code == 2);

  const auto bad = temp_file("bad.json", R"({"matrix": [[1,2]]})");
  CHECK(run_cli({"evolve", "--initial", bad.string()}).code == 2);

  const auto product = temp_file("p00.json", R"({"matrix": [
      [[1,0],[0,0],[0,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]]]})");
  const Result unsupported = run_cli({"evolve", "--initial", product.string()});
  CHECK(unsupported.code == 3);
  CHECK(unsupported.err.find("--allow-oracle") != std::string::npos);

  const Result numeric = run_cli({"evolve", "--initial", product.string(), "--allow-oracle", "--steps", "4"});
  REQUIRE(numeric.code == 0);
  const cli::Table t = cli::parse_csv(numeric.out);
  CHECK(std::isnan(t.rows[0][column(t, "E")]));
  CHECK(std::abs(t.rows[0][column(t, "T")]) < 1e-12);
}

TEST_CASE("output file and process exit status") {
  const auto path = std::filesystem::temp_directory_path() / "rfcorr_test_out.csv";
  std::filesystem::remove(path);
  REQUIRE(run_cli({"nonmarkov", "--steps", "10", "--output", path.string()}).code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "tau,E_anc,I_E");

  const std::string bin = RFCORR_CLI_PATH;
  int status = std::system((bin + " composition --tau1 2 --tau2 1 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 2);
  status = std::system((bin + " nonmarkov --steps 4 >/dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 0);
}
