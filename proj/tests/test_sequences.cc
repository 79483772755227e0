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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "isingdd/analysis.h"
#include "isingdd/propagator.h"
#include "isingdd/sequences.h"

namespace isingdd {
namespace {

constexpr double kPi = std::numbers::pi;

// |Tr(a^dagger b)| / N: 1 iff equal up to a global phase.
double phase_overlap(const Mat &a, const Mat &b) { return std::abs((a.adjoint() * b).trace()) / double(a.rows()); }

Mat mat4(std::initializer_list<cplx> v) {
  Mat m(4, 4);
  auto it = v.begin();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = *it++;
  return m;
}

// Control is the most significant qubit.
const cplx i1{0, 1};
const Mat kCnot = mat4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
const Mat kCy = mat4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -i1, 0, 0, i1, 0});
const Mat kCz = mat4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
const Mat kSwap = mat4({1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});

GateSpec two_qubit(GateKind k, int c, int t) {
  GateSpec s;
  s.kind = k;
  s.pairs = {{c, t}};
  return s;
}

const PulseFamily &order2() {
  static const PulseFamily f = PulseFamily::standard(2);
  return f;
}

TEST(DcgSingle, DurationAndNoiselessFidelity) {
  const auto g = build_graph("chain", 3, 0.0);
  const Schedule s = dcg_single(Axis::X, kPi / 2, {0, 2}, g, order2());
  EXPECT_DOUBLE_EQ(s.total_duration, 16.0);
  EXPECT_LT((s.ideal - ideal_rotation(3, {0, 2}, Axis::X, kPi / 2)).norm(), 1e-14);
  const auto u = evolve(s, g, {0, 0, 0});
  EXPECT_LT(infidelity(s.ideal, u.matrix), 1e-10);
}

TEST(DcgSingle, AdjacentTargetsRejected) {
  EXPECT_THROW(dcg_single(Axis::X, kPi / 2, {0, 1}, build_graph("chain", 3, 0.1), order2()), ConfigError);
}

TEST(DcgSymmetrized, DoubledAngleAndMirroredLayout) {
  const auto g = build_graph("chain", 3, 0.0);
  const Schedule s = dcg_symmetrized(Axis::Y, kPi / 4, {1}, g, order2());
  EXPECT_DOUBLE_EQ(s.total_duration, 32.0);
  EXPECT_LT(1 - phase_overlap(s.ideal, ideal_rotation(3, {1}, Axis::Y, kPi / 2)), 1e-14);
  // Every segment in the first half has a mirror image in the second.
  for (const auto &a : s.segments) {
    const double mirror = 32.0 - a.end();
    const bool found = std::any_of(s.segments.begin(), s.segments.end(), [&](const Segment &b) {
      return b.qubit == a.qubit && std::abs(b.start - mirror) < 1e-12 && b.duration() == a.duration();
    });
    EXPECT_TRUE(found) << "qubit " << a.qubit << " start " << a.start;
  }
}

TEST(ZzSequence, PrefactorRange) {
  EXPECT_DOUBLE_EQ(zz_prefactor(1.0, 0.0), 0.5);
  for (double tau1 : {1.0, 2.0, 3.0}) EXPECT_DOUBLE_EQ(zz_prefactor(tau1, tau1 - 1), 1 - 1 / (2 * tau1));
}

TEST(ZzSequence, ConstraintsEnforced) {
  const auto g = build_graph("chain", 4, 0.1);
  ZzOptions o;
  o.tau1 = 2;
  o.tau2 = 1.5;
  EXPECT_THROW(zz_sequence({{0, 1}}, o, g, order2()), ConfigError);
  EXPECT_THROW(zz_sequence({{0, 2}}, ZzOptions{}, g, order2()), ConfigError);
  EXPECT_THROW(zz_sequence({{0, 1}, {2, 3}}, ZzOptions{}, g, order2()), ConfigError);
  double f = 0;
  const Schedule s = zz_sequence({{1, 2}}, ZzOptions{}, g, order2(), &f);
  EXPECT_DOUBLE_EQ(f, 0.5);
  EXPECT_DOUBLE_EQ(s.total_duration, 16.0);
}

TEST(ZzSequence, HardPulsesExactWithShifts) {
  const auto g = build_graph("chain", 3, design_coupling(2));
  ZzOptions o;
  o.hard = true;
  o.n_rep = 2;
  o.tau2 = 0.4;
  const Schedule s = zz_sequence({{0, 1}}, o, g, order2());
  const auto u = evolve(s, g, {0.31, -0.52, 0.17});
  EXPECT_LT(infidelity(s.ideal, u.matrix), 1e-12);
}

TEST(Eulerian, SlotsAndDuration) {
  EXPECT_EQ(eulerian_slots(EulerVariant::Full).size(), 12u);
  EXPECT_EQ(eulerian_slots(EulerVariant::Partial).size(), 6u);
  const auto fam = PulseFamily::standard(0);
  const Schedule full = eulerian_dcg(EulerVariant::Full, kPi / 2, fam);
  EXPECT_DOUBLE_EQ(full.total_duration, 16.0);
  int pis = 0;
  for (const auto &seg : full.segments)
    if (std::abs(std::abs(seg.angle()) - kPi) < 1e-12 && seg.duration() == 1.0) ++pis;
  EXPECT_EQ(pis, 8);
  EXPECT_NO_THROW(eulerian_dcg(EulerVariant::Partial, kPi / 2, fam).validate());
}

TEST(Gates, DesignCoupling) { EXPECT_NEAR(design_coupling(5), 0.0392699, 1e-7); }

TEST(Gates, CnotIdealAndDuration) {
  const auto g = build_graph("chain", 2, design_coupling(5));
  const Schedule s = compose_gate(two_qubit(GateKind::Cnot, 0, 1), g, order2());
  EXPECT_DOUBLE_EQ(s.total_duration, 144.0);
  EXPECT_NEAR(phase_overlap(kCnot, s.ideal), 1.0, 1e-14);
  // Reversed roles give the CNOT with control and target swapped.
  const Schedule r = compose_gate(two_qubit(GateKind::Cnot, 1, 0), g, order2());
  EXPECT_NEAR(phase_overlap(kSwap * kCnot * kSwap, r.ideal), 1.0, 1e-14);
}

TEST(Gates, ControlledYZAndSwapIdeals) {
  const auto g = build_graph("chain", 2, design_coupling(5));
  EXPECT_NEAR(phase_overlap(kCy, compose_gate(two_qubit(GateKind::Cy, 0, 1), g, order2()).ideal), 1.0, 1e-14);
  EXPECT_NEAR(phase_overlap(kCz, compose_gate(two_qubit(GateKind::Cz, 0, 1), g, order2()).ideal), 1.0, 1e-14);
  EXPECT_NEAR(phase_overlap(kSwap, compose_gate(two_qubit(GateKind::Swap, 0, 1), g, order2()).ideal), 1.0,
              1e-14);
}

TEST(Gates, HadamardIdeal) {
  const auto g = build_graph("chain", 2, 0.0);
  GateSpec h;
  h.kind = GateKind::Hadamard;
  h.targets = {1};
  const Schedule s = compose_gate(h, g, order2());
  EXPECT_DOUBLE_EQ(s.total_duration, 32.0);
  Mat had(2, 2);
  had << 1, 1, 1, -1;
  had /= std::sqrt(2.0);
  const Mat want = kron(Mat(pauli_i()), had);
  EXPECT_NEAR(phase_overlap(want, s.ideal), 1.0, 1e-14);
  EXPECT_LT((s.ideal - want).norm(), 1e-12);
}

TEST(Gates, ParallelCnotsFactorize) {
  // Two disconnected edges: the joint run equals the product of separate runs.
  const double J = design_coupling(5);
  const auto g4 = build_graph("custom", 4, J, {{0, 1}, {2, 3}});
  const auto g2 = build_graph("chain", 2, J);
  GateSpec both = two_qubit(GateKind::Cnot, 0, 1);
  both.pairs.push_back({2, 3});
  const auto fam = PulseFamily::standard(0);
  const std::vector<double> d = {0.03, -0.05, 0.02, 0.04};
  const Mat u = evolve(compose_gate(both, g4, fam), g4, d).matrix;
  const Schedule one = compose_gate(two_qubit(GateKind::Cnot, 0, 1), g2, fam);
  const Mat a = evolve(one, g2, {d[0], d[1]}).matrix;
  const Mat b = evolve(one, g2, {d[2], d[3]}).matrix;
  EXPECT_LT((u - kron(a, b)).norm(), 1e-9);
}

TEST(Gates, DefaultPairs) {
  EXPECT_EQ(default_cnot_pair(build_graph("star", 6, 0.1)), std::make_pair(1, 0));
  EXPECT_EQ(default_cnot_pair(build_graph("chain", 6, 0.1)), std::make_pair(4, 5));
}

TEST(Gates, SchedulesValidate) {
  const auto g = build_graph("star", 4, design_coupling(5));
  for (GateKind k : {GateKind::Cnot, GateKind::Cy, GateKind::Cz, GateKind::Zz}) {
    const Schedule s = compose_gate(two_qubit(k, 1, 0), g, order2());
    EXPECT_NO_THROW(s.validate());
    EXPECT_NEAR(std::fmod(s.total_duration, 1.0), 0.0, 1e-12);
    EXPECT_LT((s.ideal.adjoint() * s.ideal - Mat::Identity(16, 16)).norm(), 1e-12);
  }
}

}  // namespace
}  // namespace isingdd
