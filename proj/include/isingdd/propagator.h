// Copyright 2026 The isingdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ISINGDD_PROPAGATOR_H
#define ISINGDD_PROPAGATOR_H

#include <utility>
#include <vector>

#include "isingdd/linalg.h"
#include "isingdd/network.h"
#include "isingdd/schedule.h"

namespace isingdd {

enum class Kernel {
  // Per-window propagators built from the driven clusters of the graph,
  // memoized across identical windows.
  Factorized,
  // Full-dimension RK4, one column at a time. Reference implementation.
  DenseSerial,
  // Same arithmetic as DenseSerial with columns distributed over OpenMP threads.
  DenseParallel,
};

struct EvolveOptions {
  int steps_per_tau_p = 1024;
  Kernel kernel = Kernel::Factorized;
  double defect_tolerance = 1e-9;
};

struct UnitaryResult {
  Mat matrix;
  double unitarity_defect = 0;
  int steps_per_tau_p = 0;
};

/// U(T) from i dU/dt = H(t) U with classic fixed-step RK4. The timeline is
/// split at every segment boundary; each window gets round(length * steps)
/// steps. Hard segments are applied exactly at their boundary.
UnitaryResult evolve(const Schedule &schedule, const QubitGraph &graph, const std::vector<double> &deltas,
                     const EvolveOptions &opt = {});

struct AverageHamiltonian {
  Mat h;
  bool reliable = true;
  /// Distance of the largest eigenphase from the branch cut at pi.
  double branch_margin = 0;
};

/// H with R = exp(-i T H), eigenphases taken in (-pi, pi].
AverageHamiltonian extract_avg_hamiltonian(const Mat &r, double t, double branch_guard = 1e-6);

/// As above but throws NumericError when the branch margin is violated.
Mat extract_avg_hamiltonian_strict(const Mat &r, double t, double branch_guard = 1e-6);

/// sum coef * bath (x) (product of Paulis on the listed spins).
struct SpinBathTerm {
  double coef = 1;
  Mat bath;
  std::vector<std::pair<int, Axis>> paulis;
};

/// Spins coupled to an explicit matrix bath; the Hilbert space is bath (x) spins.
struct OpenSystem {
  int n_spins = 1;
  int bath_dim = 1;
  std::vector<SpinBathTerm> terms;

  Mat matrix() const;
};

/// Slow evolution R(T) = U0(T)^dagger U(T) in the frame of the ideal
/// control U0, integrated with the sixth-order Gauss-Legendre Magnus scheme.
/// Schedule times are in units of tau_p.
Mat evolve_toggling(const Schedule &schedule, const OpenSystem &system, double tau_p, int steps_per_tau_p = 128);

/// One sixth-order Magnus step for dY/dt = A(t) Y, given h*A at the three
/// Gauss-Legendre nodes of the step.
Mat magnus6_exponent(const Mat &a1, const Mat &a2, const Mat &a3);

}  // namespace isingdd

#endif
