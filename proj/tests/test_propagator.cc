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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "isingdd/analysis.h"
#include "isingdd/propagator.h"
#include "isingdd/sequences.h"

namespace isingdd {
namespace {

constexpr double kPi = std::numbers::pi;

Schedule one_pulse(int n, int q, const PulseShape &s, double start, double total) {
  Schedule sc = Schedule::empty(n);
  sc.segments.push_back(Segment{q, s, start});
  sc.total_duration = total;
  sc.ideal = sc.nominal_unitary();
  return sc;
}

Schedule echo(int n) {
  Schedule s = Schedule::empty(n);
  std::vector<int> all;
  for (int q = 0; q < n; ++q) all.push_back(q);
  for (double t : {1.0, 3.0})
    for (auto &seg : hard_pulse(Axis::X, kPi, all, t)) s.segments.push_back(seg);
  s.total_duration = 4;
  s.ideal = s.nominal_unitary();
  return s;
}

EvolveOptions dense(int steps, double tol = 1e-9) {
  EvolveOptions o;
  o.kernel = Kernel::DenseSerial;
  o.steps_per_tau_p = steps;
  o.defect_tolerance = tol;
  return o;
}

TEST(Evolve, ZeroHamiltonianIsIdentity) {
  Schedule s = Schedule::empty(2);
  s.total_duration = 3;
  const auto u = evolve(s, build_graph("chain", 2, 0.0), {0, 0}, dense(64));
  EXPECT_EQ((u.matrix - Mat::Identity(4, 4)).norm(), 0.0);
}

TEST(Evolve, ConstantShiftIsExactDiagonal) {
  Schedule s = Schedule::empty(2);
  s.total_duration = 5;
  const double d = 0.37;
  for (Kernel k : {Kernel::DenseSerial, Kernel::Factorized}) {
    EvolveOptions o = dense(1024);
    o.kernel = k;
    const auto u = evolve(s, build_graph("chain", 2, 0.0), {d, 0}, o);
    // Qubit 0 is the most significant bit.
    EXPECT_NEAR(std::abs(u.matrix(0, 0) - std::exp(cplx(0, -d * 5 / 2))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u.matrix(3, 3) - std::exp(cplx(0, d * 5 / 2))), 0.0, 1e-12);
  }
}

TEST(Evolve, PureZDriveMatchesExactExponential) {
  // A z drive commutes with the Ising drift, so the exact answer is diagonal.
  const auto shape = hann_pulse(Axis::Z, 1.1);
  const auto g = build_graph("chain", 2, 0.2);
  const auto u = evolve(one_pulse(2, 1, shape, 0, 2), g, {0.3, -0.1}, dense(1024));
  const auto diag = drift_diagonal(g, {0.3, -0.1});
  for (int k = 0; k < 4; ++k) {
    const double s1 = (k & 1) ? -1 : 1;
    const cplx want = std::exp(cplx(0, -(diag[k] * 2 + s1 * 1.1 / 2)));
    EXPECT_NEAR(std::abs(u.matrix(k, k) - want), 0.0, 1e-10);
  }
}

TEST(Evolve, FourthOrderSelfConvergence) {
  const auto g = build_graph("chain", 2, 0.3);
  const auto s = one_pulse(2, 0, hann_pulse(Axis::X, kPi), 0, 2);
  const std::vector<double> d = {0.2, -0.1};
  const Mat ref = evolve(s, g, d, dense(4096)).matrix;
  const double e1 = (evolve(s, g, d, dense(16, 1)).matrix - ref).norm();
  const double e2 = (evolve(s, g, d, dense(32, 1)).matrix - ref).norm();
  const double order = std::log2(e1 / e2);
  EXPECT_GE(order, 3.7);
  EXPECT_LE(order, 4.3);
}

TEST(Evolve, CoarseStepIsReportedNotRenormalized) {
  const auto s = one_pulse(2, 0, hann_pulse(Axis::X, kPi), 0, 1);
  EXPECT_THROW(evolve(s, build_graph("chain", 2, 0.0), {0, 0}, dense(1)), NumericError);
}

TEST(Evolve, CompositionInTimeOrder) {
  const auto g = build_graph("chain", 2, 0.25);
  const std::vector<double> d = {0.1, 0.2};
  const auto s1 = one_pulse(2, 0, hann_pulse(Axis::X, kPi / 2), 0, 1);
  const auto s2 = one_pulse(2, 1, hann_pulse(Axis::Y, kPi), 0, 2);
  Schedule both = s1;
  both.append(s2);
  const Mat u = evolve(both, g, d, dense(512)).matrix;
  const Mat v = evolve(s2, g, d, dense(512)).matrix * evolve(s1, g, d, dense(512)).matrix;
  EXPECT_LT((u - v).norm(), 1e-10);
}

TEST(Evolve, KernelsAgree) {
  const auto g = build_graph("chain", 3, design_coupling(5));
  GateSpec spec;
  spec.kind = GateKind::Cnot;
  spec.pairs = {{1, 2}};
  const Schedule s = compose_gate(spec, g, PulseFamily::standard(0));
  const std::vector<double> d = {0.05, -0.02, 0.03};
  EvolveOptions par = dense(512);
  par.kernel = Kernel::DenseParallel;
  const Mat a = evolve(s, g, d, dense(512)).matrix;
  const Mat b = evolve(s, g, d, par).matrix;
  EXPECT_EQ((a - b).norm(), 0.0);
  EvolveOptions fac = dense(512);
  fac.kernel = Kernel::Factorized;
  const Mat c = evolve(s, g, d, fac).matrix;
  // Both are fourth order but integrate different splittings.
  EXPECT_LT((a - c).norm(), 5e-8);
}

TEST(HardPulse, PiAboutXIsMinusISigmaX) {
  const auto segs = hard_pulse(Axis::X, kPi, {0}, 0.0);
  ASSERT_EQ(segs.size(), 1u);
  Schedule s = Schedule::empty(2);
  s.segments = segs;
  s.total_duration = 1;
  const Mat u = evolve(s, build_graph("chain", 2, 0.0), {0, 0}, dense(8)).matrix;
  const Mat want = kron(Mat(cplx(0, -1) * pauli(Axis::X)), Mat(pauli_i()));
  EXPECT_LT((u - want).norm(), 1e-14);
  Schedule zero = s;
  zero.segments = hard_pulse(Axis::X, 0.0, {0}, 0.0);
  EXPECT_LT((evolve(zero, build_graph("chain", 2, 0.0), {0, 0}, dense(8)).matrix - Mat::Identity(4, 4)).norm(),
            1e-14);
}

TEST(HardPulse, SpinEchoCancelsAnyShift) {
  // Global x flips leave sigma_z sigma_z alone, so only the shifts refocus.
  const auto s = echo(3);
  const auto g = build_graph("chain", 3, 0.0);
  for (double scale : {0.1, 1.0, 3.0}) {
    const std::vector<double> d = {0.7 * scale, -1.3 * scale, 0.4 * scale};
    for (Kernel k : {Kernel::DenseSerial, Kernel::Factorized}) {
      EvolveOptions o = dense(256);
      o.kernel = k;
      const auto u = evolve(s, g, d, o);
      EXPECT_LT(infidelity(s.ideal, u.matrix), 1e-12) << scale;
    }
  }
}

TEST(AverageHamiltonian, SigmaZRecovered) {
  const double T = 2.5;
  const Mat r = expm_hermitian(Mat(pauli(Axis::Z)), T);
  EXPECT_LT((extract_avg_hamiltonian_strict(r, T) - Mat(pauli(Axis::Z))).norm(), 1e-12);
}

TEST(AverageHamiltonian, EchoKeepsOnlyTheIsingTerm) {
  const auto s = echo(2);
  const auto u = evolve(s, build_graph("chain", 2, 0.3), {0.5, -0.2}, dense(256));
  // Remove the known ideal factor (-1) before taking the logarithm.
  const Mat r = s.ideal.adjoint() * u.matrix;
  const Mat zz = kron(Mat(pauli(Axis::Z)), Mat(pauli(Axis::Z)));
  EXPECT_LT(opnorm(Mat(extract_avg_hamiltonian_strict(r, 4) - 0.15 * zz)), 1e-10);
}

TEST(AverageHamiltonian, BranchCutIsFlagged) {
  const Mat r = -Mat::Identity(2, 2);
  EXPECT_FALSE(extract_avg_hamiltonian(r, 1.0).reliable);
  EXPECT_THROW(extract_avg_hamiltonian_strict(r, 1.0), NumericError);
}

TEST(AverageHamiltonian, RoundTripRandom) {
  for (unsigned long long seed : {1ULL, 2ULL, 3ULL}) {
    const Mat h = random_hermitian(6, seed);
    const double T = 0.9 * kPi / opnorm(h);
    EXPECT_LT((extract_avg_hamiltonian_strict(expm_hermitian(h, T), T) - h).norm(), 1e-10);
  }
}

}  // namespace
}  // namespace isingdd
