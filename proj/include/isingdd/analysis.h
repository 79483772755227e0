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

#ifndef ISINGDD_ANALYSIS_H
#define ISINGDD_ANALYSIS_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isingdd/io.h"
#include "isingdd/linalg.h"
#include "isingdd/network.h"
#include "isingdd/propagator.h"
#include "isingdd/schedule.h"

namespace isingdd {

/// Values below this are indistinguishable from integrator round-off.
inline constexpr double kInfidelityFloor = 1e-13;
inline constexpr int kMaxSpectrumQubits = 6;

/// (N + |Tr V|^2) / (N + N^2) with V = ideal^dagger u.
double fidelity(const Mat &ideal, const Mat &u);

/// 1 - F evaluated with V normalized to unit Frobenius norm per dimension,
/// so a uniform norm drift of the integrator does not show up as gate error.
/// Equals 1 - fidelity(ideal, u) for exactly unitary u.
double infidelity(const Mat &ideal, const Mat &u);

struct WeightSpectrum {
  int n = 0;
  /// |c_I|^2.
  double identity = 0;
  /// absolute[w] = sum over weight-w Pauli words of |c_P|^2, w = 0..n.
  std::vector<double> absolute;
  /// absolute[w] / sum_{w >= 1} absolute[w]; zero for w = 0.
  std::vector<double> relative;
  /// sum over all words of |c_P|^2.
  double total = 0;
};

/// c_P = Tr(P^dagger V) / N over all 4^n Pauli words, grouped by weight.
WeightSpectrum pauli_weight_spectrum(const Mat &v);

struct GateMeta {
  std::string gate;
  std::string graph;
  int pulse_order = 2;
  int n_rep = 5;
  double delta_rms = 0;
  std::uint64_t seed = 0;
};

struct GateReport {
  GateMeta meta;
  int n = 0;
  double duration = 0;
  double fidelity = 1;
  double infidelity = 0;
  double unitarity_defect = 0;
  int steps_per_tau_p = 0;
  bool has_spectrum = false;
  WeightSpectrum spectrum;
  Mat unitary;
};

GateReport simulate_gate(const Schedule &schedule, const QubitGraph &graph, const std::vector<double> &deltas,
                         const EvolveOptions &opt, const GateMeta &meta);

json report_to_json(const GateReport &r);

struct SweepRow {
  double delta_rms = 0;
  double mean_infidelity = 0;
  double stderr_ = 0;
  /// NaN when not available (end points, censored neighbours).
  double slope = 0;
  int draws = 0;
  bool censored = false;
};

/// Mean infidelity and its standard error per grid point over the disorder
/// draws; draw m uses disorder.draw(m, n) scaled to the grid value. Draws run
/// concurrently and are reduced in index order.
std::vector<SweepRow> sweep(const Schedule &schedule, const QubitGraph &graph, const std::vector<double> &delta_grid,
                            const DisorderModel &disorder, const EvolveOptions &opt);

/// Centered finite-difference slope of log y against log x; one-sided at the
/// ends. Entries touching a non-positive or censored value are NaN.
std::vector<double> loglog_slope(const std::vector<double> &x, const std::vector<double> &y,
                                 double floor = kInfidelityFloor);

/// Least-squares slope of log y against log x over points with y > floor.
double loglog_fit(const std::vector<double> &x, const std::vector<double> &y, double floor = kInfidelityFloor);

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows, const GateMeta &meta, int n);
void write_weights_csv(std::ostream &os, const GateReport &r, bool header = true);

}  // namespace isingdd

#endif
