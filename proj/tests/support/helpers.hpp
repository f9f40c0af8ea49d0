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

// Test-only generators and reference computations. The ensemble and Bell
// projections here are written out element by element and do not call the
// library's channel or basis helpers.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "rfcorr/dynamics.hpp"
#include "rfcorr/linalg.hpp"

namespace rfcorr::testing {

inline Op4 random_density4(std::mt19937_64& rng, int rank = 4) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cplx(n(rng), n(rng));
  Op4 rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline Op2 random_density2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Op2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(n(rng), n(rng));
  Op2 rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

template <int N>
Operator<N> random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator<N> g;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g(i, j) = cplx(n(rng), n(rng));
  return 0.5 * (g + g.adjoint());
}

template <int N>
Operator<N> random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator<N> g;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g(i, j) = cplx(n(rng), n(rng));
  Eigen::HouseholderQR<Operator<N>> qr(g);
  return qr.householderQ();
}

inline BellSpectrum random_bell(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> w{};
  double s = 0.0;
  for (double& x : w) {
    x = e(rng);
    s += x;
  }
  for (double& x : w) x /= s;
  return BellSpectrum::normalized(w, 1e-12);
}

// Branch unitary entries, rows/columns ordered {|1>, |0>}.
inline std::complex<double> printed_entry(int row, int col, double phi, double tau) {
  const std::complex<double> e = std::polar(1.0, phi);
  if (row == col) return std::cos(tau);
  if (row == 0) return -std::conj(e) * std::sin(tau);
  return e * std::sin(tau);
}

// Four-branch ensemble average written out with explicit index loops.
inline Op4 ensemble_reference(const Op4& rho, double tau) {
  const double phases[2] = {0.0, std::numbers::pi};
  Op4 out = Op4::Zero();
  for (double pa : phases) {
    for (double pb : phases) {
      // Computational bit b maps to printed index 1 - b.
      std::complex<double> k[4][4];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          const int ra = r >> 1, rb = r & 1, ca = c >> 1, cb = c & 1;
          k[r][c] = printed_entry(1 - ra, 1 - ca, pa, tau) * printed_entry(1 - rb, 1 - cb, pb, tau);
        }
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          std::complex<double> acc = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) acc += k[r][i] * rho(i, j) * std::conj(k[c][j]);
          out(r, c) += 0.25 * acc;
        }
    }
  }
  return out;
}

// <B_k| rho |B_k> with the Bell vectors typed in by hand, order (1+, 1-, 2+, 2-).
inline std::array<double, 4> bell_weights_reference(const Op4& rho) {
  const double h = 0.5;
  return {
      h * (rho(1, 1) + rho(2, 2) + rho(1, 2) + rho(2, 1)).real(),
      h * (rho(1, 1) + rho(2, 2) - rho(1, 2) - rho(2, 1)).real(),
      h * (rho(0, 0) + rho(3, 3) + rho(0, 3) + rho(3, 0)).real(),
      h * (rho(0, 0) + rho(3, 3) - rho(0, 3) - rho(3, 0)).real(),
  };
}

inline double h2(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

template <int N>
double max_abs(const Operator<N>& m) {
  return m.cwiseAbs().maxCoeff();
}

}  // namespace rfcorr::testing
