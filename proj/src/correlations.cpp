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

#include "rfcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rfcorr {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kPptTolerance = 1e-12;

Op4 pauli_pair(int k) { return tensor(pauli(k), pauli(k)); }

}  // namespace

CorrelationVector correlation_c_vector(const Op4& rho) {
  CorrelationVector c;
  c.c1 = (rho * pauli_pair(1)).trace().real();
  c.c2 = (rho * pauli_pair(2)).trace().real();
  c.c3 = (rho * pauli_pair(3)).trace().real();
  return c;
}

CorrelationVector c_vector_of(const BellSpectrum& lambda) {
  const double a = lambda[BellLabel::OnePlus];
  const double b = lambda[BellLabel::OneMinus];
  const double c = lambda[BellLabel::TwoPlus];
  const double d = lambda[BellLabel::TwoMinus];
  return {a - b + c - d, a - b - c + d, -a - b + c + d};
}

BellSpectrum bell_spectrum_from_c(const CorrelationVector& c) {
  return BellSpectrum::normalized({0.25 * (1.0 + c.c1 + c.c2 - c.c3),
                                   0.25 * (1.0 - c.c1 - c.c2 - c.c3),
                                   0.25 * (1.0 + c.c1 - c.c2 + c.c3),
                                   0.25 * (1.0 - c.c1 + c.c2 + c.c3)},
                                  1e-12);
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("binary_entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double binary_entropy_deficit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("binary_entropy_deficit: argument outside [0, 1]");
  const double y = (2.0 * x - 1.0) * (2.0 * x - 1.0);
  if (y > 1e-2) return 1.0 - binary_entropy(x);
  // 1 - h((1 + u)/2) = sum_k u^(2k) / (2k (2k - 1) ln 2)
  double sum = 0.0, power = y;
  for (int k = 1; k < 12; ++k, power *= y) sum += power / (2.0 * k * (2.0 * k - 1.0));
  return sum / std::numbers::ln2;
}

Op4 closest_product(const Op4& rho) {
  return tensor(partial_trace(rho, Subsystem::A), partial_trace(rho, Subsystem::B));
}

Op4 closest_classical_bd(const BellSpectrum& lambda) {
  const CorrelationVector c = c_vector_of(lambda);
  int m = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(c[k]) > std::abs(c[m]) + kTieTolerance) m = k;
  }
  return 0.25 * (Op4::Identity() + c[m] * pauli_pair(m + 1));
}

BellSpectrum closest_separable_spectrum(const BellSpectrum& lambda) {
  const double top = lambda.max_weight();
  if (top <= 0.5) return lambda;
  const BellLabel dom = lambda.dominant();
  std::array<double, 4> w{};
  const double rest = 1.0 - top;
  for (BellLabel label : kBellLabels) {
    const int i = static_cast<int>(label);
    if (label == dom) {
      w[i] = 0.5;
    } else if (rest > 0.0) {
      w[i] = lambda[label] / (2.0 * rest);
    } else {
      w[i] = 1.0 / 6.0;  // pure Bell state: any split of the remaining half is optimal
    }
  }
  return BellSpectrum::normalized(w, 1e-12);
}

Op4 closest_separable_bd(const BellSpectrum& lambda) {
  return bell_spectrum_to_density(closest_separable_spectrum(lambda));
}

double negativity(const Op4& rho) {
  const auto spec = hermitian_eig<4>(partial_transpose_b(rho));
  double n = 0.0;
  for (int k = 0; k < 4; ++k) n += std::max(-spec.values(k), 0.0);
  return n;
}

double bell_entanglement(const BellSpectrum& lambda) {
  const double top = lambda.max_weight();
  return top > 0.5 ? binary_entropy_deficit(top) : 0.0;
}

namespace {

// All four quantifiers are relative entropies; negative values are rounding.
void clamp_roundoff(CorrelationReport& r) {
  r.total = std::max(0.0, r.total);
  r.discord = std::max(0.0, r.discord);
  r.classical = std::max(0.0, r.classical);
}

CorrelationReport analytic_report(const Op4& rho, const BellSpectrum& lambda, double residual) {
  CorrelationReport r;
  r.bell_diagonal = true;
  r.bell_residual = residual;

  const double s_rho = von_neumann_entropy<4>(rho);
  r.closest_product = closest_product(rho);
  r.closest_classical = closest_classical_bd(lambda);
  r.closest_separable = closest_separable_bd(lambda);

  const double s_chi = von_neumann_entropy<4>(r.closest_classical);
  r.total = von_neumann_entropy<4>(r.closest_product) - s_rho;
  r.discord = s_chi - s_rho;
  r.classical = von_neumann_entropy<4>(closest_product(r.closest_classical)) - s_chi;
  // Inside the separable region sigma is rho itself; skip the roundoff-level entropy difference.
  r.entanglement = lambda.max_weight() > 0.5
                       ? std::max(0.0, relative_entropy<4>(rho, *r.closest_separable))
                       : 0.0;
  clamp_roundoff(r);

  r.negativity = negativity(rho);
  r.ppt = r.negativity < kPptTolerance;
  return r;
}

}  // namespace

CorrelationReport quantifier_report(const Op4& rho, const SearchConfig& fallback) {
  require_density<4>(rho, "quantifier_report");
  const BellDecomposition bell = bell_spectrum_of(rho);
  if (bell.bell_diagonal()) return analytic_report(rho, bell.spectrum, bell.residual);

  CorrelationReport r;
  r.bell_diagonal = false;
  r.bell_residual = bell.residual;

  const double s_rho = von_neumann_entropy<4>(rho);
  r.closest_product = closest_product(rho);
  r.total = von_neumann_entropy<4>(r.closest_product) - s_rho;

  const OracleResult search = oracle_closest_classical(rho, fallback);
  r.closest_classical = search.minimizer;
  const double s_chi = von_neumann_entropy<4>(r.closest_classical);
  r.discord = s_chi - s_rho;
  r.classical = von_neumann_entropy<4>(closest_product(r.closest_classical)) - s_chi;
  clamp_roundoff(r);

  r.negativity = negativity(rho);
  r.ppt = r.negativity < kPptTolerance;
  return r;
}

CorrelationReport quantifier_report(const BellSpectrum& lambda) {
  return analytic_report(bell_spectrum_to_density(lambda), lambda, 0.0);
}

}  // namespace rfcorr
