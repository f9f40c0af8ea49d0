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
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rfcorr {

using cplx = std::complex<double>;

template <int N>
using Operator = Eigen::Matrix<cplx, N, N>;

using Op2 = Operator<2>;
using Op4 = Operator<4>;

/// Thrown for inputs that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double positivity = 1e-10;
inline constexpr double entropy_clamp = 1e-8;
inline constexpr double support_cutoff = 1e-12;
inline constexpr double support_overlap = 1e-8;
}  // namespace tol

/// Eigendecomposition of a Hermitian operator, eigenvalues in descending order.
/// Column k of `vectors` belongs to `values[k]`.
template <int N>
struct Spectrum {
  Eigen::Matrix<double, N, 1> values;
  Operator<N> vectors;

  Operator<N> reconstruct() const {
    return vectors * values.template cast<cplx>().asDiagonal() * vectors.adjoint();
  }
};

template <int N>
double hermiticity_error(const Operator<N>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <int N>
Spectrum<N> hermitian_eig(const Operator<N>& m);

/// Throws InvalidInput unless `rho` is Hermitian, unit trace and positive
/// semidefinite at the library tolerances.
template <int N>
void require_density(const Operator<N>& rho, const std::string& what = "state");

template <int N>
bool is_density(const Operator<N>& rho);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-8, 0) are clamped to zero.
template <int N>
double von_neumann_entropy(const Operator<N>& rho);

/// S(rho || sigma) in bits, +infinity when supp(rho) is not inside supp(sigma).
template <int N>
double relative_entropy(const Operator<N>& rho, const Operator<N>& sigma);

template <int N>
double trace_distance(const Operator<N>& rho, const Operator<N>& sigma);

/// Kronecker product in |a b> order (qubit A is the most significant bit).
Op4 tensor(const Op2& a, const Op2& b);

enum class Subsystem { A, B };

Op2 partial_trace(const Op4& rho, Subsystem keep);

/// Partial transpose on qubit B.
Op4 partial_transpose_b(const Op4& rho);

/// Local measurement angles. Each qubit basis is the pair
/// |b0> = cos(t/2)|0> + e^{ip} sin(t/2)|1>, |b1> = sin(t/2)|0> - e^{ip} cos(t/2)|1>.
struct LocalAngles {
  double theta_a = 0.0;
  double phi_a = 0.0;
  double theta_b = 0.0;
  double phi_b = 0.0;
};

/// Columns are the two basis vectors for the given Bloch angles.
Op2 qubit_basis(double theta, double phi);

/// Columns are |b_i^A b_j^B> in index order 2i+j.
Op4 product_basis(const LocalAngles& angles);

/// Keeps only the diagonal of rho in the product basis given by `angles`.
Op4 dephase_in_basis(const Op4& rho, const LocalAngles& angles);

/// Hermitian matrix function f(m) = V f(diag) V^dagger.
template <int N, class F>
Operator<N> hermitian_function(const Operator<N>& m, F&& f) {
  const auto spec = hermitian_eig(m);
  Eigen::Matrix<cplx, N, 1> mapped;
  for (int k = 0; k < N; ++k) mapped(k) = cplx(f(spec.values(k)), 0.0);
  return spec.vectors * mapped.asDiagonal() * spec.vectors.adjoint();
}

Op2 pauli(int k);  // k = 0 (identity), 1 (x), 2 (y), 3 (z)

}  // namespace rfcorr
