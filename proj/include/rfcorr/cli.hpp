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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rfcorr/dynamics.hpp"
#include "rfcorr/nonmarkov.hpp"

namespace rfcorr::cli {

enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kUnsupportedAnalytic = 3,
  kCertificationFailure = 4,
};

enum class Format { Csv, Json };

struct RunConfig {
  double g = 1.0;
  double omega = 0.0;
  double tau_max = 3.141592653589793;
  int steps = 2000;
  std::string initial = "0.9,0.1,0,0";
  NonMarkovConvention convention = NonMarkovConvention::IncreaseCounting;
  std::string output;  // empty: standard output
  Format format = Format::Csv;
  std::uint64_t seed = 1;
  int samples = 100;
  bool allow_oracle = false;
  double tau1 = 0.0;
  double tau2 = 0.0;

  void validate() const;
};

/// Columnar numeric table; each row has one value per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// CSV with a header row, comma delimiter, LF endings, 12 significant digits.
std::string to_csv(const Table& table);
/// {"columns": [...], "<name>": [values...], ...} in column order.
std::string to_json(const Table& table);
Table parse_csv(const std::string& text);

using InitialState = std::variant<BellSpectrum, Op4>;

/// Accepts "a,b,c,d" Bell weights, an inline JSON object, or a path to a
/// JSON file with {"bell": [...]} or {"matrix": [[[re, im], ...], ...]}.
InitialState parse_initial(const std::string& spec);

/// Runs one CLI invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfcorr::cli
