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
#include <vector>

#include "rfcorr/dynamics.hpp"
#include "rfcorr/linalg.hpp"

namespace rfcorr {

/// Knobs for the brute-force closest-state searches.
struct SearchConfig {
  int coarse_grid_points_per_angle = 24;
  int refinement_iterations = 200;
  double refinement_shrink = 0.5;
  double simplex_grid_step = 0.01;
  std::uint64_t seed = 1;
  /// Random starting points refined in addition to the best grid points.
  int restarts = 4;

  void validate() const;
};

struct OracleResult {
  Op4 minimizer;
  double value = 0.0;  // bits
  long evaluations = 0;
  /// Best value found so far, one entry for the grid stage and one per
  /// refinement iteration.
  std::vector<double> history;
};

/// min S(rho || chi) over states diagonal in some local product basis.
/// The dephased diagonal is optimal for a fixed basis, so only the four
/// local angles are searched.
OracleResult oracle_closest_classical(const Op4& rho, const SearchConfig& cfg = {});

/// min S(rho || sigma) over Bell-diagonal sigma with every weight <= 1/2.
OracleResult oracle_closest_separable_bd(const BellSpectrum& lambda, const SearchConfig& cfg = {});

/// min S(rho || tau_A x tau_B) over pairs of Bloch vectors.
OracleResult oracle_closest_product(const Op4& rho, const SearchConfig& cfg = {});

}  // namespace rfcorr
