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

#include "rfcorr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <utility>

namespace rfcorr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinStep = 1e-13;
constexpr std::size_t kGridSeeds = 4;

using Point = std::vector<double>;

struct Candidate {
  Point x;
  double value;
};

/// Keeps the `capacity` lowest-valued points seen so far.
class BestSet {
public:
  explicit BestSet(std::size_t capacity) : capacity_(capacity) {}

  void offer(double value, const Point& x) {
    if (!std::isfinite(value)) return;
    if (items_.size() == capacity_ && value >= items_.back().value) return;
    auto it = std::upper_bound(items_.begin(), items_.end(), value,
                               [](double v, const Candidate& c) { return v < c.value; });
    items_.insert(it, Candidate{x, value});
    if (items_.size() > capacity_) items_.pop_back();
  }

  const std::vector<Candidate>& items() const { return items_; }

private:
  std::size_t capacity_;
  std::vector<Candidate> items_;
};

// Pattern search over a fixed set of poll directions. Each iteration polls
// every direction at the current step; a sweep without improvement shrinks
// the step. `history` receives the running best after each iteration.
template <class Objective>
Candidate pattern_search(Candidate start, std::span<const Point> directions, double step,
                         const SearchConfig& cfg, Objective&& objective, long& evaluations,
                         double& global_best, std::vector<double>& history) {
  Candidate cur = std::move(start);
  Point trial(cur.x.size());
  for (int it = 0; it < cfg.refinement_iterations && step > kMinStep; ++it) {
    bool improved = false;
    for (const Point& d : directions) {
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] = cur.x[k] + step * d[k];
      const double v = objective(trial);
      ++evaluations;
      if (v < cur.value) {
        cur.x = trial;
        cur.value = v;
        improved = true;
      }
    }
    if (!improved) step *= cfg.refinement_shrink;
    global_best = std::min(global_best, cur.value);
    history.push_back(global_best);
  }
  return cur;
}

std::vector<Point> coordinate_directions(std::span<const double> scales) {
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    for (double sign : {1.0, -1.0}) {
      Point d(scales.size(), 0.0);
      d[i] = sign * scales[i];
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

double shannon_bits(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

// 2x2 block <a| rho |a> obtained by contracting qubit A with `a`.
Op2 contract_a(const Op4& rho, const Eigen::Matrix<cplx, 2, 1>& a) {
  Op2 out = Op2::Zero();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          out(r, c) += std::conj(a(i)) * rho(2 * i + r, 2 * j + c) * a(j);
  return out;
}

// Entropy of the diagonal of rho in the local product basis given by the
// angles; equals S(rho || chi) + S(rho) for the dephased chi.
double dephased_entropy(const Op4& rho, const Op2& basis_a, const Op2& basis_b) {
  std::array<double, 4> p{};
  for (int i = 0; i < 2; ++i) {
    const Op2 block = contract_a(rho, basis_a.col(i));
    for (int j = 0; j < 2; ++j) {
      const auto b = basis_b.col(j);
      p[2 * i + j] = std::max((b.adjoint() * block * b)(0, 0).real(), 0.0);
    }
  }
  return shannon_bits(p);
}

Op2 bloch_state(double r, double theta, double phi) {
  const double x = r * std::sin(theta) * std::cos(phi);
  const double y = r * std::sin(theta) * std::sin(phi);
  const double z = r * std::cos(theta);
  Op2 m;
  m << 0.5 * (1.0 + z), cplx(0.5 * x, -0.5 * y),
       cplx(0.5 * x, 0.5 * y), 0.5 * (1.0 - z);
  return m;
}

Op4 product_from(const Point& p) {
  return tensor(bloch_state(p[0], p[1], p[2]), bloch_state(p[3], p[4], p[5]));
}

}  // namespace

void SearchConfig::validate() const {
  if (coarse_grid_points_per_angle <= 0 || refinement_iterations <= 0 || restarts < 0) {
    throw InvalidInput("SearchConfig: grid points and refinement iterations must be positive");
  }
  if (!(refinement_shrink > 0.0 && refinement_shrink < 1.0)) {
    throw InvalidInput("SearchConfig: refinement_shrink must lie in (0, 1)");
  }
  if (!(simplex_grid_step > 0.0 && simplex_grid_step <= 0.5)) {
    throw InvalidInput("SearchConfig: simplex_grid_step must lie in (0, 0.5]");
  }
}

OracleResult oracle_closest_classical(const Op4& rho, const SearchConfig& cfg) {
  cfg.validate();
  require_density<4>(rho, "oracle_closest_classical");
  const double s_rho = von_neumann_entropy<4>(rho);
  const int n = cfg.coarse_grid_points_per_angle;
  const double dtheta = std::numbers::pi / n;
  const double dphi = 2.0 * std::numbers::pi / n;

  OracleResult result;
  auto objective = [&](const Point& a) {
    return dephased_entropy(rho, qubit_basis(a[0], a[1]), qubit_basis(a[2], a[3])) - s_rho;
  };

  // Coarse grid. The qubit-A contraction is shared by every qubit-B basis.
  std::vector<std::pair<double, double>> angles;
  std::vector<Op2> bases;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      angles.emplace_back(i * dtheta, j * dphi);
      bases.push_back(qubit_basis(i * dtheta, j * dphi));
    }
  }
  BestSet best(kGridSeeds);
  for (std::size_t ia = 0; ia < bases.size(); ++ia) {
    const std::array<Op2, 2> blocks = {contract_a(rho, bases[ia].col(0)),
                                       contract_a(rho, bases[ia].col(1))};
    for (std::size_t ib = 0; ib < bases.size(); ++ib) {
      std::array<double, 4> p{};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const auto b = bases[ib].col(j);
          p[2 * i + j] = std::max((b.adjoint() * blocks[i] * b)(0, 0).real(), 0.0);
        }
      ++result.evaluations;
      best.offer(shannon_bits(p) - s_rho,
                 {angles[ia].first, angles[ia].second, angles[ib].first, angles[ib].second});
    }
  }

  std::vector<Candidate> seeds = best.items();
  double global_best = seeds.front().value;
  result.history.push_back(global_best);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
  for (int r = 0; r < cfg.restarts; ++r) {
    Point x = {theta_dist(rng), phi_dist(rng), theta_dist(rng), phi_dist(rng)};
    const double v = objective(x);
    ++result.evaluations;
    seeds.push_back({std::move(x), v});
  }

  const std::array<double, 4> scales = {dtheta, dphi, dtheta, dphi};
  const auto dirs = coordinate_directions(scales);
  Candidate winner = seeds.front();
  for (const Candidate& seed : seeds) {
    Candidate refined = pattern_search(seed, dirs, 1.0, cfg, objective, result.evaluations,
                                       global_best, result.history);
    if (refined.value < winner.value) winner = std::move(refined);
  }

  const LocalAngles la{winner.x[0], winner.x[1], winner.x[2], winner.x[3]};
  result.minimizer = dephase_in_basis(rho, la);
  result.value = relative_entropy<4>(rho, result.minimizer);
  return result;
}

OracleResult oracle_closest_separable_bd(const BellSpectrum& lambda, const SearchConfig& cfg) {
  cfg.validate();
  const auto& w = lambda.weights();
  constexpr double kCap = 0.5 + 1e-12;

  auto feasible = [&](const Point& s) {
    double sum = 0.0;
    for (double x : s) {
      if (x < 0.0 || x > kCap) return false;
      sum += x;
    }
    return std::abs(sum - 1.0) < 1e-9;
  };
  // Both states are diagonal in the Bell basis, so the relative entropy is
  // the classical one between the weight vectors.
  auto objective = [&](const Point& s) {
    if (!feasible(s)) return kInf;
    double v = 0.0;
    for (int k = 0; k < 4; ++k) {
      if (w[k] <= 0.0) continue;
      if (s[k] <= 0.0) return kInf;
      v += w[k] * std::log2(w[k] / s[k]);
    }
    return v;
  };

  OracleResult result;
  const int n = static_cast<int>(std::floor(1.0 / cfg.simplex_grid_step + 1e-9));
  const double step = 1.0 / n;
  Candidate best{{}, kInf};
  auto consider = [&](Point s) {
    const double v = objective(s);
    ++result.evaluations;
    if (v < best.value) best = {std::move(s), v};
  };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (int k = 0; i + j + k <= n; ++k) {
        const int l = n - i - j - k;
        consider({i * step, j * step, k * step, l * step});
      }
  // The target itself is a feasible point whenever it is separable.
  consider({w[0], w[1], w[2], w[3]});

  double global_best = best.value;
  result.history.push_back(global_best);

  std::vector<Point> dirs;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      Point d(4, 0.0);
      d[a] = 1.0;
      d[b] = -1.0;
      dirs.push_back(std::move(d));
    }
  best = pattern_search(best, dirs, step, cfg, objective, result.evaluations, global_best,
                        result.history);

  const BellSpectrum sigma = BellSpectrum::normalized({best.x[0], best.x[1], best.x[2], best.x[3]}, 1e-9);
  result.minimizer = bell_spectrum_to_density(sigma);
  result.value = relative_entropy<4>(bell_spectrum_to_density(lambda), result.minimizer);
  return result;
}

OracleResult oracle_closest_product(const Op4& rho, const SearchConfig& cfg) {
  cfg.validate();
  require_density<4>(rho, "oracle_closest_product");

  auto objective = [&](const Point& p) {
    if (p[0] < 0.0 || p[0] > 1.0 || p[3] < 0.0 || p[3] > 1.0) return kInf;
    return relative_entropy<4>(rho, product_from(p));
  };

  const int m = std::max(4, cfg.coarse_grid_points_per_angle / 4);
  const double dr = 1.0 / (m - 1);
  const double dtheta = std::numbers::pi / (m - 1);
  const double dphi = 2.0 * std::numbers::pi / m;

  // Bloch-ball grid for one qubit; the centre appears once.
  std::vector<std::array<double, 3>> ball = {{0.0, 0.0, 0.0}};
  for (int ir = 1; ir < m; ++ir)
    for (int it = 0; it < m; ++it)
      for (int ip = 0; ip < m; ++ip) {
        if ((it == 0 || it == m - 1) && ip > 0) continue;  // poles
        ball.push_back({ir * dr, it * dtheta, ip * dphi});
      }

  OracleResult result;
  BestSet best(kGridSeeds);
  for (const auto& a : ball)
    for (const auto& b : ball) {
      Point p = {a[0], a[1], a[2], b[0], b[1], b[2]};
      const double v = objective(p);
      ++result.evaluations;
      best.offer(v, p);
    }

  std::vector<Candidate> seeds = best.items();
  double global_best = seeds.empty() ? kInf : seeds.front().value;
  result.history.push_back(global_best);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < cfg.restarts; ++r) {
    Point x = {unit(rng), std::numbers::pi * unit(rng), 2.0 * std::numbers::pi * unit(rng),
               unit(rng), std::numbers::pi * unit(rng), 2.0 * std::numbers::pi * unit(rng)};
    const double v = objective(x);
    ++result.evaluations;
    seeds.push_back({std::move(x), v});
  }

  const std::array<double, 6> scales = {dr, dtheta, dphi, dr, dtheta, dphi};
  const auto dirs = coordinate_directions(scales);
  Candidate winner{{}, kInf};
  for (const Candidate& seed : seeds) {
    Candidate refined = pattern_search(seed, dirs, 1.0, cfg, objective, result.evaluations,
                                       global_best, result.history);
    if (winner.x.empty() || refined.value < winner.value) winner = std::move(refined);
  }

  result.minimizer = product_from(winner.x);
  result.value = winner.value;
  return result;
}

}  // namespace rfcorr
