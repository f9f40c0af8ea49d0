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

#include "rfcorr/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "rfcorr/correlations.hpp"

namespace rfcorr {

namespace {

constexpr double kLabelMargin = 1e-12;
constexpr double kSwitchResolution = 1e-9;
constexpr double kEdgeResolution = 1e-12;

void require_ascending(std::span<const double> tau, const char* who) {
  if (tau.empty()) throw InvalidInput(std::string(who) + ": empty grid");
  for (std::size_t k = 1; k < tau.size(); ++k) {
    if (!(tau[k] > tau[k - 1])) {
      std::ostringstream msg;
      msg << who << ": grid is not strictly ascending at index " << k;
      throw InvalidInput(msg.str());
    }
  }
}

void require_uniform(std::span<const double> tau, const char* who) {
  require_ascending(tau, who);
  if (tau.size() < 3) return;
  const double h = tau[1] - tau[0];
  for (std::size_t k = 2; k < tau.size(); ++k) {
    if (std::abs((tau[k] - tau[k - 1]) - h) > 1e-9 * std::max(1.0, h)) {
      throw InvalidInput(std::string(who) + ": grid spacing is not uniform");
    }
  }
}

void require_same_size(std::span<const double> a, std::span<const double> b, const char* who) {
  if (a.size() != b.size()) throw InvalidInput(std::string(who) + ": grid and series differ in length");
}

// Shrinks [lo, hi] around the sign change of pred, where pred(lo) != pred(hi).
template <class Pred>
double bisect(double lo, double hi, Pred&& pred, double resolution) {
  const bool at_lo = pred(lo);
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> uniform_grid(double tau_max, int steps) {
  if (steps < 1 || !(tau_max > 0.0) || !std::isfinite(tau_max)) {
    throw InvalidInput("uniform_grid: need steps >= 1 and finite tau_max > 0");
  }
  std::vector<double> grid(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) grid[k] = tau_max * k / steps;
  return grid;
}

double ancilla_entanglement(double tau) {
  if (!(tau >= 0.0)) throw InvalidInput("ancilla_entanglement: tau must be >= 0");
  const double c = std::cos(tau);
  const double top = std::max(c * c, 1.0 - c * c);
  return top > 0.5 ? binary_entropy_deficit(top) : 0.0;
}

NonMarkovTrace nonmarkovianity_measure(std::span<const double> tau_grid,
                                       NonMarkovConvention convention) {
  require_ascending(tau_grid, "nonmarkovianity_measure");
  NonMarkovTrace trace;
  trace.convention = convention;
  trace.tau.assign(tau_grid.begin(), tau_grid.end());
  trace.ancilla_entanglement.reserve(tau_grid.size());
  trace.measure.reserve(tau_grid.size());
  for (double t : tau_grid) trace.ancilla_entanglement.push_back(ancilla_entanglement(t));

  // Prefix scan over steps. Within a step E is taken monotone, so the
  // integral of |dE/dt| over it is |Delta E|.
  double acc = 0.0;
  trace.measure.push_back(0.0);
  for (std::size_t k = 1; k < tau_grid.size(); ++k) {
    const double delta = trace.ancilla_entanglement[k] - trace.ancilla_entanglement[k - 1];
    acc += convention == NonMarkovConvention::IncreaseCounting ? std::abs(delta) + delta
                                                               : std::abs(delta) - delta;
    trace.measure.push_back(acc);
  }
  return trace;
}

double composition_violation(const BellSpectrum& initial, double tau1, double tau2) {
  if (!(tau1 >= 0.0 && tau1 <= tau2)) {
    throw InvalidInput("composition_violation: need 0 <= tau1 <= tau2");
  }
  const BellSpectrum direct = evolve_bell_spectrum(initial, tau2);
  const BellSpectrum restarted = evolve_bell_spectrum(evolve_bell_spectrum(initial, tau1), tau2 - tau1);
  return trace_distance<4>(bell_spectrum_to_density(direct), bell_spectrum_to_density(restarted));
}

IntervalSet detect_frozen_intervals(std::span<const double> tau, std::span<const double> values,
                                    double tol) {
  require_same_size(tau, values, "detect_frozen_intervals");
  require_uniform(tau, "detect_frozen_intervals");
  IntervalSet out;
  const std::size_t n = values.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double sum = values[i];
    double lo = values[i];
    double hi = values[i];
    while (j + 1 < n) {
      const double v = values[j + 1];
      const double nsum = sum + v;
      const double nlo = std::min(lo, v);
      const double nhi = std::max(hi, v);
      const double mean = nsum / static_cast<double>(j + 2 - i);
      if (!(nhi - mean < tol && mean - nlo < tol)) break;
      sum = nsum;
      lo = nlo;
      hi = nhi;
      ++j;
    }
    if (j - i + 1 >= 3) {
      out.push_back({tau[i], tau[j]});
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<double> detect_switching_times(const BellSpectrum& initial, double tau_max, int steps) {
  const std::vector<double> grid = uniform_grid(tau_max, steps);
  const BellLabel top = initial.dominant();

  auto weight = [&](BellLabel label, double t) { return evolve_bell_spectrum(initial, t)[label]; };
  auto second = [&](double t) -> std::optional<BellLabel> {
    const BellSpectrum s = evolve_bell_spectrum(initial, t);
    std::optional<BellLabel> best;
    double best_w = -1.0;
    double runner_up = -1.0;
    for (BellLabel label : kBellLabels) {
      if (label == top) continue;
      if (s[label] > best_w) {
        runner_up = best_w;
        best_w = s[label];
        best = label;
      } else {
        runner_up = std::max(runner_up, s[label]);
      }
    }
    if (best_w - runner_up <= kLabelMargin) return std::nullopt;
    return best;
  };

  std::vector<double> times;
  std::optional<BellLabel> last;
  double last_tau = 0.0;
  for (double t : grid) {
    const auto label = second(t);
    if (!label) continue;
    if (last && *label != *last) {
      const BellLabel from = *last;
      const BellLabel to = *label;
      times.push_back(bisect(
          last_tau, t, [&](double x) { return weight(to, x) > weight(from, x); },
          kSwitchResolution));
    }
    last = label;
    last_tau = t;
  }
  return times;
}

IntervalSet detect_death_revival(std::span<const double> tau, std::span<const double> entanglement,
                                 double threshold, const std::function<double(double)>& closed_form) {
  require_same_size(tau, entanglement, "detect_death_revival");
  require_uniform(tau, "detect_death_revival");
  auto dead = [&](double e) { return e <= threshold; };
  auto edge = [&](std::size_t alive, std::size_t gone) {
    const double lo = std::min(tau[alive], tau[gone]);
    const double hi = std::max(tau[alive], tau[gone]);
    // E grows quadratically off the edge, so the sampling threshold would shift it by ~sqrt(threshold).
    auto zero = [&](double x) { return closed_form(x) <= 0.0; };
    if (closed_form && zero(lo) != zero(hi)) return bisect(lo, hi, zero, kEdgeResolution);
    return 0.5 * (tau[alive] + tau[gone]);
  };

  IntervalSet out;
  const std::size_t n = tau.size();
  std::size_t i = 0;
  while (i < n) {
    if (!dead(entanglement[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && dead(entanglement[j + 1])) ++j;
    const double start = i == 0 ? tau[0] : edge(i - 1, i);
    const double end = j + 1 == n ? tau[n - 1] : edge(j + 1, j);
    if (end > start) out.push_back({start, end});
    i = j + 1;
  }
  return out;
}

}  // namespace rfcorr
