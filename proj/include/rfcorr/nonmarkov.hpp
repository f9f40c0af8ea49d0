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

#include <functional>
#include <span>
#include <vector>

#include "rfcorr/dynamics.hpp"

namespace rfcorr {

enum class NonMarkovConvention {
  /// Accumulates |dE| + dE per step: only entanglement increases count.
  IncreaseCounting,
  /// Accumulates |dE| - dE per step, the formula with Delta E = E(t) - E(t0) read literally.
  Literal,
};

struct NonMarkovTrace {
  std::vector<double> tau;
  std::vector<double> ancilla_entanglement;
  std::vector<double> measure;  // I^E, non-decreasing, starts at 0
  NonMarkovConvention convention = NonMarkovConvention::IncreaseCounting;
};

struct Interval {
  double start;
  double end;
};

/// Disjoint, ascending.
using IntervalSet = std::vector<Interval>;

/// tau_max * k / steps for k = 0..steps.
std::vector<double> uniform_grid(double tau_max, int steps);

/// Entanglement of the system-ancilla state cos^2 |2+><2+| + sin^2 |1-><1-|.
double ancilla_entanglement(double tau);

NonMarkovTrace nonmarkovianity_measure(std::span<const double> tau_grid,
                                       NonMarkovConvention convention);

/// Trace distance between direct evolution to tau2 and evolution restarted at tau1.
double composition_violation(const BellSpectrum& initial, double tau1, double tau2);

/// Maximal runs of at least three grid points that stay within `tol` of the
/// run mean.
IntervalSet detect_frozen_intervals(std::span<const double> tau, std::span<const double> values,
                                    double tol = 1e-6);

/// Times where the label of the second-largest Bell weight changes, refined
/// by bisection to 1e-9. The largest label never changes under the channel,
/// so the second-largest is taken among the other three.
std::vector<double> detect_switching_times(const BellSpectrum& initial, double tau_max, int steps);

/// Maximal intervals with E <= threshold. With a closed form the edges are
/// bisected to 1e-12; otherwise interior edges sit halfway to the neighbour.
IntervalSet detect_death_revival(std::span<const double> tau, std::span<const double> entanglement,
                                 double threshold = 1e-12,
                                 const std::function<double(double)>& closed_form = {});

}  // namespace rfcorr
