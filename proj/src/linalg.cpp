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

#include "rfcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rfcorr {

template <int N>
Spectrum<N> hermitian_eig(const Operator<N>& m) {
  const double err = hermiticity_error<N>(m);
  if (!(err <= tol::hermitian)) {
    std::ostringstream msg;
    msg << "hermitian_eig: matrix is not Hermitian (max |M - M^dagger| = " << err << ")";
    throw InvalidInput(msg.str());
  }
  const Operator<N> sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator<N>> solver(sym);
  // Eigen sorts ascending.
  Spectrum<N> out;
  for (int k = 0; k < N; ++k) {
    out.values(k) = solver.eigenvalues()(N - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(N - 1 - k);
  }
  return out;
}

template <int N>
bool is_density(const Operator<N>& rho) {
  if (!(hermiticity_error<N>(rho) <= tol::hermitian)) return false;
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > tol::trace) return false;
  return hermitian_eig<N>(rho).values(N - 1) >= -tol::positivity;
}

template <int N>
void require_density(const Operator<N>& rho, const std::string& what) {
  if (!rho.allFinite()) throw InvalidInput(what + ": non-finite entries");
  const double herm = hermiticity_error<N>(rho);
  if (!(herm <= tol::hermitian)) {
    throw InvalidInput(what + ": not Hermitian");
  }
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > tol::trace) {
    std::ostringstream msg;
    msg << what << ": trace " << rho.trace().real() << " differs from 1";
    throw InvalidInput(msg.str());
  }
  const double min_eig = hermitian_eig<N>(rho).values(N - 1);
  if (min_eig < -tol::positivity) {
    std::ostringstream msg;
    msg << what << ": negative eigenvalue " << min_eig;
    throw InvalidInput(msg.str());
  }
}

namespace {

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

template <int N>
double von_neumann_entropy(const Operator<N>& rho) {
  const auto spec = hermitian_eig<N>(rho);
  double s = 0.0;
  for (int k = 0; k < N; ++k) {
    const double lam = spec.values(k);
    if (lam < -tol::entropy_clamp) {
      std::ostringstream msg;
      msg << "von_neumann_entropy: eigenvalue " << lam << " is negative";
      throw InvalidInput(msg.str());
    }
    s -= xlog2x(std::max(lam, 0.0));
  }
  return std::max(s, 0.0);
}

template <int N>
double relative_entropy(const Operator<N>& rho, const Operator<N>& sigma) {
  const auto sig = hermitian_eig<N>(sigma);
  double cross = 0.0;  // -Tr(rho log2 sigma)
  for (int k = 0; k < N; ++k) {
    const auto v = sig.vectors.col(k);
    const double weight = (v.adjoint() * rho * v)(0, 0).real();
    if (sig.values(k) < tol::support_cutoff) {
      if (weight > tol::support_overlap) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross -= weight * std::log2(sig.values(k));
  }
  return cross - von_neumann_entropy<N>(rho);
}

template <int N>
double trace_distance(const Operator<N>& rho, const Operator<N>& sigma) {
  const auto spec = hermitian_eig<N>(Operator<N>(rho - sigma));
  return 0.5 * spec.values.cwiseAbs().sum();
}

Op4 tensor(const Op2& a, const Op2& b) {
  Op4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Op2 partial_trace(const Op4& rho, Subsystem keep) {
  Op2 out = Op2::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      for (int k = 0; k < 2; ++k) {
        out(r, c) += keep == Subsystem::A ? rho(2 * r + k, 2 * c + k) : rho(2 * k + r, 2 * k + c);
      }
    }
  }
  return out;
}

Op4 partial_transpose_b(const Op4& rho) {
  Op4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = rho.block<2, 2>(2 * i, 2 * j).transpose();
  return out;
}

Op2 qubit_basis(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const cplx phase = std::polar(1.0, phi);
  Op2 basis;
  basis << c, s,
           phase * s, -phase * c;
  return basis;
}

Op4 product_basis(const LocalAngles& angles) {
  const Op2 a = qubit_basis(angles.theta_a, angles.phi_a);
  const Op2 b = qubit_basis(angles.theta_b, angles.phi_b);
  return tensor(a, b);
}

Op4 dephase_in_basis(const Op4& rho, const LocalAngles& angles) {
  const Op4 basis = product_basis(angles);
  Op4 out = Op4::Zero();
  for (int k = 0; k < 4; ++k) {
    const auto v = basis.col(k);
    const double p = (v.adjoint() * rho * v)(0, 0).real();
    out += p * (v * v.adjoint());
  }
  return out;
}

Op2 pauli(int k) {
  Op2 m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw InvalidInput("pauli: index must be 0..3");
  }
  return m;
}

template Spectrum<2> hermitian_eig<2>(const Op2&);
template Spectrum<4> hermitian_eig<4>(const Op4&);
template bool is_density<2>(const Op2&);
template bool is_density<4>(const Op4&);
template void require_density<2>(const Op2&, const std::string&);
template void require_density<4>(const Op4&, const std::string&);
template double von_neumann_entropy<2>(const Op2&);
template double von_neumann_entropy<4>(const Op4&);
template double relative_entropy<2>(const Op2&, const Op2&);
template double relative_entropy<4>(const Op4&, const Op4&);
template double trace_distance<2>(const Op2&, const Op2&);
template double trace_distance<4>(const Op4&, const Op4&);

}  // namespace rfcorr
