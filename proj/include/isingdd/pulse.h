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

#ifndef ISINGDD_PULSE_H
#define ISINGDD_PULSE_H

#include <string>
#include <vector>

#include "isingdd/linalg.h"

namespace isingdd {

enum class ShapeKind { Fourier, Square };

/// Symmetric shaped pulse. Times are in units of the nominal pulse length.
///
/// The base profile on u in [0, 1] is v(u) = sum_k a_k (1 - cos 2 pi k u),
/// whose integral is sum_k a_k = phi0. The applied amplitude is
/// V(t) = sign * amplitude_scale * v(t / duration).
struct PulseShape {
  Axis axis = Axis::X;
  double phi0 = 0.0;
  std::vector<double> fourier_amps;
  double duration = 1.0;
  int sign = 1;
  double amplitude_scale = 1.0;
  ShapeKind kind = ShapeKind::Fourier;

  double base_amplitude(double u) const;
  double base_phase(double u) const;

  double amplitude(double t) const;
  double phase(double t) const;
  double net_angle() const { return sign * amplitude_scale * duration * base_phase(1.0); }
  double peak_amplitude() const;

  PulseShape stretched() const;
  PulseShape inverted() const;
  PulseShape along(Axis a) const;

  /// Checks normalization and the basic field ranges.
  void validate() const;
};

PulseShape square_pulse(Axis axis, double phi0);
PulseShape fourier_pulse(Axis axis, double phi0, std::vector<double> amps);

/// Single-harmonic Hann profile a_1 = phi0, no zeroed coefficients.
PulseShape hann_pulse(Axis axis, double phi0);

double phase_profile(const PulseShape &shape, double t);
/// phi(t) - phi_net/2; odd about the pulse midpoint.
double symmetrized_phase(const PulseShape &shape, double t);

struct PulseCoefficients {
  double phi0 = 0;
  double upsilon = 0;
  double beta = 0;
  double xi = 0;
  double delta1 = 0, delta2 = 0, delta3 = 0, delta4 = 0, delta5 = 0;

  // Names used when the pulse is a pi pulse.
  double kappa() const { return upsilon; }
  double alpha() const { return beta; }
  double zeta() const { return xi; }
  double gamma(int j) const;
  double delta(int j) const;
};

/// Coefficient integrals of the base profile by Gauss-Legendre quadrature
/// (points per axis, simplex map for the triple averages).
PulseCoefficients compute_coefficients(const PulseShape &shape, int points = 64);

struct SelfRefocusingOptions {
  int starts = 64;
  int max_iterations = 80;
  double tolerance = 1e-12;
  /// Also zero xi (needs one more harmonic).
  bool zero_xi = false;
};

/// Shape with upsilon = 0 (order 1) or upsilon = beta = 0 (order 2) and the
/// smallest peak amplitude among the roots reached from a fixed set of starts.
PulseShape find_self_refocusing(int order, double phi0, int num_harmonics, Axis axis = Axis::X,
                                const SelfRefocusingOptions &opt = {});

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double> &x, std::vector<double> &w);

}  // namespace isingdd

#endif
