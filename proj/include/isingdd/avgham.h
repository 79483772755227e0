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

#ifndef ISINGDD_AVGHAM_H
#define ISINGDD_AVGHAM_H

#include <string>
#include <vector>

#include "isingdd/linalg.h"
#include "isingdd/propagator.h"
#include "isingdd/pulse.h"
#include "isingdd/schedule.h"

namespace isingdd {

/// Qubit-bath coupling H0 = B + A sigma_z with explicit bath matrices.
/// dim = 1 is the c-number (chemical shift) limit.
struct BathSpec {
  int dim = 1;
  Mat A;
  Mat B;

  static BathSpec scalar(double a, double b);
  /// A and B random Hermitian with unit spectral norm.
  static BathSpec random(int dim, unsigned long long seed);
  void validate() const;
};

/// Closed-form average Hamiltonian of a single x pulse through order 0, 1
/// or 2, on bath (x) spin.
Mat pulse_avg_ham(const PulseCoefficients &c, double phi0, const BathSpec &bath, double tau_p, int order);

enum class DcgVariant { FullEuler, PartialEuler, Y3p, Y3pSymmetrized };

DcgVariant dcg_variant_from_string(const std::string &s);
std::string dcg_variant_name(DcgVariant v);
/// 1 for the Eulerian variants, 4 for the chain variants.
int dcg_variant_spins(DcgVariant v);

/// Closed-form average Hamiltonian of a DCG sequence on (x) baths (x) spins.
/// c belongs to the rotation pulse at phi0, c_pi to the pi pulses. Throws
/// ConfigError naming the first coefficient that violates the formula's
/// assumptions, or when the requested order has no closed form.
Mat dcg_avg_ham(DcgVariant v, const PulseCoefficients &c, const PulseCoefficients &c_pi, double phi0,
                const std::vector<BathSpec> &baths, double tau_p, int order);

/// H = sum_i B_i + A_i sigma_z_i + (J/2) sum_edges sigma_z sigma_z, baths
/// in the same order as the spins. edges may be empty.
OpenSystem bath_system(const std::vector<BathSpec> &baths, const std::vector<std::pair<int, int>> &edges = {},
                       double J = 0);

/// Single-qubit schedule holding one pulse at t = 0.
Schedule single_pulse_schedule(const PulseShape &shape);

/// Schedule realizing the variant with the given shapes (rotation about y for
/// the Eulerian and chain variants).
Schedule dcg_variant_schedule(DcgVariant v, double phi0, const PulseShape &pi_shape, const PulseShape &rot_shape);

/// Average Hamiltonian from the toggling-frame propagator of schedule.
Mat numeric_avg_ham(const Schedule &schedule, const OpenSystem &system, double tau_p, int steps_per_tau_p = 128);

/// Same quantity for spins that only talk to their own bath: each spin is
/// propagated alone and the per-spin average Hamiltonians are summed.
Mat numeric_avg_ham_uncoupled(const Schedule &schedule, const std::vector<BathSpec> &baths, double tau_p,
                              int steps_per_tau_p = 128);

struct ResidualPoint {
  double tau_p = 0;
  double residual = 0;
  /// Local slope log(r_k / r_{k-1}) / log(tau_k / tau_{k-1}); 0 for the first point.
  double order = 0;
};

/// Residual of the analytic expansion against the numeric one over a tau_p grid.
template <class Analytic, class Numeric>
std::vector<ResidualPoint> residual_scan(const std::vector<double> &taus, Analytic analytic, Numeric numeric);

}  // namespace isingdd

#include <cmath>

namespace isingdd {

template <class Analytic, class Numeric>
std::vector<ResidualPoint> residual_scan(const std::vector<double> &taus, Analytic analytic, Numeric numeric) {
  std::vector<ResidualPoint> out;
  for (size_t k = 0; k < taus.size(); ++k) {
    ResidualPoint p;
    p.tau_p = taus[k];
    p.residual = opnorm(Mat(numeric(taus[k]) - analytic(taus[k])));
    if (k > 0 && out.back().residual > 0 && p.residual > 0)
      p.order = std::log(p.residual / out.back().residual) / std::log(taus[k] / taus[k - 1]);
    out.push_back(p);
  }
  return out;
}

}  // namespace isingdd

#endif
