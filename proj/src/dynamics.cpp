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

#include "rfcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rfcorr {

namespace {

constexpr double kPhaseTolerance = 1e-12;
constexpr double kNegativeClamp = 1e-14;

void require_tau(double tau, const char* who) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    std::ostringstream msg;
    msg << who << ": dimensionless time must be finite and >= 0, got " << tau;
    throw InvalidInput(msg.str());
  }
}

std::array<double, 4> checked_weights(std::array<double, 4> w) {
  for (double& x : w) {
    if (!std::isfinite(x) || x < -kNegativeClamp) {
      std::ostringstream msg;
      msg << "BellSpectrum: weights must be non-negative, got " << x;
      throw InvalidInput(msg.str());
    }
    x = std::max(x, 0.0);
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(sum - 1.0) > BellSpectrum::kSumTolerance) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "BellSpectrum: weights sum to " << sum << ", expected 1";
    throw InvalidInput(msg.str());
  }
  return w;
}

}  // namespace

std::string_view bell_label_name(BellLabel label) {
  switch (label) {
    case BellLabel::OnePlus: return "1p";
    case BellLabel::OneMinus: return "1m";
    case BellLabel::TwoPlus: return "2p";
    case BellLabel::TwoMinus: return "2m";
  }
  return "?";
}

Eigen::Matrix<cplx, 4, 1> bell_vector(BellLabel label) {
  const double r = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix<cplx, 4, 1> v = Eigen::Matrix<cplx, 4, 1>::Zero();
  switch (label) {
    case BellLabel::OnePlus: v(1) = r; v(2) = r; break;
    case BellLabel::OneMinus: v(1) = r; v(2) = -r; break;
    case BellLabel::TwoPlus: v(0) = r; v(3) = r; break;
    case BellLabel::TwoMinus: v(0) = r; v(3) = -r; break;
  }
  return v;
}

Op4 bell_basis() {
  Op4 b;
  for (BellLabel label : kBellLabels) b.col(static_cast<int>(label)) = bell_vector(label);
  return b;
}

BellSpectrum::BellSpectrum(double one_plus, double one_minus, double two_plus, double two_minus)
    : BellSpectrum(std::array<double, 4>{one_plus, one_minus, two_plus, two_minus}) {}

BellSpectrum::BellSpectrum(const std::array<double, 4>& weights)
    : weights_(checked_weights(weights)) {}

BellSpectrum BellSpectrum::normalized(const std::array<double, 4>& weights, double tolerance) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= tolerance)) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "BellSpectrum: weights sum to " << sum << ", outside tolerance " << tolerance;
    throw InvalidInput(msg.str());
  }
  std::array<double, 4> w = weights;
  for (double& x : w) x /= sum;
  return BellSpectrum(w);
}

double BellSpectrum::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

BellLabel BellSpectrum::dominant() const {
  return static_cast<BellLabel>(std::max_element(weights_.begin(), weights_.end()) - weights_.begin());
}

Op2 branch_unitary(double phase, double tau) {
  const bool zero = std::abs(phase) <= kPhaseTolerance;
  const bool pi = std::abs(phase - std::numbers::pi) <= kPhaseTolerance;
  if (!zero && !pi) {
    std::ostringstream msg;
    msg << "branch_unitary: field phase must be 0 or pi, got " << phase;
    throw InvalidInput(msg.str());
  }
  require_tau(tau, "branch_unitary");
  const double c = std::cos(tau);
  const double s = std::sin(tau);
  // e^{i phi} is exactly +1 or -1 here.
  const double e = zero ? 1.0 : -1.0;
  Op2 u;
  u << c, -e * s,
       e * s, c;
  return u;
}

Op2 branch_unitary_computational(double phase, double tau) {
  const Op2 printed = branch_unitary(phase, tau);
  Op2 swap;
  swap << 0, 1, 1, 0;
  return swap * printed * swap;
}

double mixing_fraction(double tau) {
  require_tau(tau, "mixing_fraction");
  const double s = std::sin(2.0 * tau);
  return 0.5 * s * s;
}

Op2 single_qubit_map(const Op2& rho, double tau) {
  Op2 out = Op2::Zero();
  for (double phase : FieldChannel::kPhases) {
    const Op2 u = branch_unitary_computational(phase, tau);
    out += FieldChannel::kBranchProbability * (u * rho * u.adjoint());
  }
  return out;
}

Op4 two_qubit_map(const Op4& rho, double tau) {
  Op4 out = Op4::Zero();
  for (double phase_a : FieldChannel::kPhases) {
    for (double phase_b : FieldChannel::kPhases) {
      const Op4 u = tensor(branch_unitary_computational(phase_a, tau),
                           branch_unitary_computational(phase_b, tau));
      out += FieldChannel::kBranchProbability * FieldChannel::kBranchProbability *
             (u * rho * u.adjoint());
    }
  }
  return out;
}

Op4 ancilla_evolve(const Op4& rho, double tau) {
  Op4 out = Op4::Zero();
  for (double phase : FieldChannel::kPhases) {
    const Op4 u = tensor(Op2::Identity(), branch_unitary_computational(phase, tau));
    out += FieldChannel::kBranchProbability * (u * rho * u.adjoint());
  }
  return out;
}

BellSpectrum evolve_bell_spectrum(const BellSpectrum& initial, double tau) {
  const double f = mixing_fraction(tau);
  std::array<double, 4> w{};
  for (BellLabel label : kBellLabels) {
    w[static_cast<int>(label)] = initial[label] * (1.0 - f) + initial[bell_partner(label)] * f;
  }
  return BellSpectrum::normalized(w, 1e-12);
}

Op4 bell_spectrum_to_density(const BellSpectrum& spectrum) {
  Op4 rho = Op4::Zero();
  for (BellLabel label : kBellLabels) {
    const auto v = bell_vector(label);
    rho += spectrum[label] * (v * v.adjoint());
  }
  return rho;
}

BellDecomposition bell_spectrum_of(const Op4& rho) {
  require_density<4>(rho, "bell_spectrum_of");
  const Op4 b = bell_basis();
  const Op4 in_bell = b.adjoint() * rho * b;
  std::array<double, 4> w{};
  double residual = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = std::max(in_bell(i, i).real(), 0.0);
    for (int j = 0; j < 4; ++j) {
      if (i != j) residual = std::max(residual, std::abs(in_bell(i, j)));
    }
  }
  return {BellSpectrum::normalized(w, 1e-9), residual};
}

}  // namespace rfcorr
