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

#include <optional>

#include "rfcorr/dynamics.hpp"
#include "rfcorr/linalg.hpp"
#include "rfcorr/oracle.hpp"

namespace rfcorr {

/// c_k = Tr[rho (sigma_k x sigma_k)] for k = x, y, z.
struct CorrelationVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator[](int k) const { return k == 0 ? c1 : (k == 1 ? c2 : c3); }
};

CorrelationVector correlation_c_vector(const Op4& rho);

/// Affine map between Bell weights and the correlation vector.
CorrelationVector c_vector_of(const BellSpectrum& lambda);
BellSpectrum bell_spectrum_from_c(const CorrelationVector& c);

double binary_entropy(double x);
// 1 - h(x), accurate near x = 1/2 where the subtraction cancels.
double binary_entropy_deficit(double x);

/// Product of the two marginals, the relative-entropy-closest product state.
Op4 closest_product(const Op4& rho);

/// (I + c_m sigma_m x sigma_m)/4 with m the dominant |c_k| (smallest index on ties).
Op4 closest_classical_bd(const BellSpectrum& lambda);

/// The input when lambda_max <= 1/2, otherwise the dominant weight is set to 1/2
/// and the others are rescaled by 1/(2(1 - lambda_max)).
Op4 closest_separable_bd(const BellSpectrum& lambda);
BellSpectrum closest_separable_spectrum(const BellSpectrum& lambda);

double negativity(const Op4& rho);

/// max(0, 1 - h(lambda_max)): relative entropy of entanglement of a Bell-diagonal state.
double bell_entanglement(const BellSpectrum& lambda);

struct CorrelationReport {
  double total = 0.0;      // T
  double discord = 0.0;    // D
  double classical = 0.0;  // C
  /// Relative entropy of entanglement; absent outside the Bell-diagonal class.
  std::optional<double> entanglement;

  Op4 closest_product;
  Op4 closest_classical;
  std::optional<Op4> closest_separable;

  bool bell_diagonal = false;
  double bell_residual = 0.0;
  double negativity = 0.0;
  bool ppt = true;
};

/// T, D, C, E in bits. Bell-diagonal inputs use the closed-form closest
/// states; other inputs get D and C from the classical-state search and no E.
CorrelationReport quantifier_report(const Op4& rho, const SearchConfig& fallback = {});

/// Same report for a Bell-diagonal state given by its weights.
CorrelationReport quantifier_report(const BellSpectrum& lambda);

}  // namespace rfcorr
