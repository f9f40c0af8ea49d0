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

#include <array>
#include <numbers>
#include <string_view>

#include "rfcorr/linalg.hpp"

namespace rfcorr {

/// Bell basis labels. |1+-> = (|01> +- |10>)/sqrt2, |2+-> = (|00> +- |11>)/sqrt2.
enum class BellLabel { OnePlus = 0, OneMinus = 1, TwoPlus = 2, TwoMinus = 3 };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::OnePlus, BellLabel::OneMinus, BellLabel::TwoPlus, BellLabel::TwoMinus};

std::string_view bell_label_name(BellLabel label);

/// Label that the channel mixes `label` with: 1+ <-> 2-, 1- <-> 2+.
constexpr BellLabel bell_partner(BellLabel label) {
  switch (label) {
    case BellLabel::OnePlus: return BellLabel::TwoMinus;
    case BellLabel::OneMinus: return BellLabel::TwoPlus;
    case BellLabel::TwoPlus: return BellLabel::OneMinus;
    case BellLabel::TwoMinus: return BellLabel::OnePlus;
  }
  return label;
}

/// Bell state vector in the computational basis |00>,|01>,|10>,|11>.
Eigen::Matrix<cplx, 4, 1> bell_vector(BellLabel label);

/// Unitary whose columns are the Bell vectors in label order.
Op4 bell_basis();

/// Probability weights on the four Bell projectors, ordered (1+, 1-, 2+, 2-).
class BellSpectrum {
public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validating constructor; throws InvalidInput on negative weights or bad normalization.
  BellSpectrum(double one_plus, double one_minus, double two_plus, double two_minus);
  explicit BellSpectrum(const std::array<double, 4>& weights);

  /// Divides by the sum. Rejects sums further than `tolerance` from 1.
  static BellSpectrum normalized(const std::array<double, 4>& weights, double tolerance);

  static BellSpectrum maximally_mixed() { return BellSpectrum(0.25, 0.25, 0.25, 0.25); }

  double operator[](BellLabel label) const { return weights_[static_cast<int>(label)]; }
  const std::array<double, 4>& weights() const { return weights_; }

  double max_weight() const;
  /// Smallest-index label attaining the maximum weight.
  BellLabel dominant() const;

  bool operator==(const BellSpectrum&) const = default;

private:
  std::array<double, 4> weights_;
};

/// Random-external-fields channel: two equiprobable branches with field phase 0 or pi.
/// Only g*t enters the evolution; omega is kept for bookkeeping (rotating frame).
struct FieldChannel {
  static constexpr std::array<double, 2> kPhases = {0.0, std::numbers::pi};
  static constexpr double kBranchProbability = 0.5;

  double g = 1.0;
  double omega = 0.0;

  double dimensionless_time(double t) const { return g * t; }
  double absolute_time(double tau) const { return tau / g; }
};

/// Branch unitary with rows and columns ordered {|1>, |0>}:
/// [[cos tau, -e^{-i phi} sin tau], [e^{i phi} sin tau, cos tau]].
/// Only phi in {0, pi} is accepted.
Op2 branch_unitary(double phase, double tau);

/// The same operator expressed in the {|0>, |1>} ordering used everywhere else.
Op2 branch_unitary_computational(double phase, double tau);

/// f(tau) = sin^2(2 tau) / 2.
double mixing_fraction(double tau);

Op2 single_qubit_map(const Op2& rho, double tau);

/// (1/4) sum_{i,j} (U_i x U_j) rho (U_i x U_j)^dagger.
Op4 two_qubit_map(const Op4& rho, double tau);

/// Identity on qubit A (ancilla), single-qubit channel on qubit B.
Op4 ancilla_evolve(const Op4& rho, double tau);

/// Closed-form evolution of Bell-diagonal states:
/// lambda_k(tau) = lambda_k(0) (1 - f) + lambda_partner(k)(0) f.
BellSpectrum evolve_bell_spectrum(const BellSpectrum& initial, double tau);

Op4 bell_spectrum_to_density(const BellSpectrum& spectrum);

struct BellDecomposition {
  static constexpr double kResidualTolerance = 1e-8;

  BellSpectrum spectrum;
  /// Largest off-diagonal magnitude of rho in the Bell basis.
  double residual;

  bool bell_diagonal() const { return residual <= kResidualTolerance; }
};

BellDecomposition bell_spectrum_of(const Op4& rho);

}  // namespace rfcorr
