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
#include <sstream>

#include <gtest/gtest.h>

#include "isingdd/analysis.h"
#include "isingdd/sequences.h"

namespace isingdd {
namespace {

constexpr double kPi = std::numbers::pi;

Mat zz_rotation(double theta) {
  const Mat zz = kron(Mat(pauli(Axis::Z)), Mat(pauli(Axis::Z)));
  return expm_hermitian(zz, theta);
}

TEST(Fidelity, KnownValues) {
  EXPECT_NEAR(fidelity(Mat(pauli_i()), Mat(pauli(Axis::X))), 1.0 / 3, 1e-15);
  const double th = kPi / 8;
  const double c = std::cos(th);
  EXPECT_NEAR(fidelity(Mat::Identity(4, 4), zz_rotation(th)), (4 + 16 * c * c) / 20, 1e-14);
  EXPECT_NEAR(infidelity(Mat::Identity(4, 4), zz_rotation(th)), 1 - (4 + 16 * c * c) / 20, 1e-14);
}

TEST(Fidelity, GlobalPhaseInvariant) {
  const Mat u = random_unitary(8, 3);
  const Mat v = random_unitary(8, 4);
  const cplx ph = std::exp(cplx(0, 0.77));
  EXPECT_NEAR(fidelity(u, v), fidelity(u, ph * v), 1e-14);
  EXPECT_NEAR(infidelity(u, u * ph), 0.0, 1e-14);
  EXPECT_THROW(fidelity(u, Mat::Identity(4, 4)), ConfigError);
}

TEST(WeightSpectrum, SinglePauliWords) {
  const Mat zz = kron(Mat(pauli(Axis::Z)), Mat(pauli(Axis::Z)));
  auto ws = pauli_weight_spectrum(zz);
  EXPECT_NEAR(ws.absolute[2], 1.0, 1e-15);
  EXPECT_NEAR(ws.relative[2], 1.0, 1e-15);
  ws = pauli_weight_spectrum(kron(Mat(pauli(Axis::X)), Mat(pauli_i())));
  EXPECT_NEAR(ws.absolute[1], 1.0, 1e-15);
  EXPECT_NEAR(ws.absolute[2], 0.0, 1e-15);
}

TEST(WeightSpectrum, SumsAndInfidelityIdentity) {
  // For a unitary V: sum |c_P|^2 = 1 and the non-identity weight matches 1 - |Tr V|^2 / N^2.
  const Mat v = random_unitary(16, 9);
  const auto ws = pauli_weight_spectrum(v);
  EXPECT_NEAR(ws.total, 1.0, 1e-12);
  double rel = 0, rest = 0;
  for (int w = 1; w <= ws.n; ++w) {
    rel += ws.relative[w];
    rest += ws.absolute[w];
  }
  EXPECT_NEAR(rel, 1.0, 1e-12);
  EXPECT_EQ(ws.relative[0], 0.0);
  EXPECT_NEAR(ws.identity, std::norm(v.trace()) / 256.0, 1e-12);
  EXPECT_NEAR(infidelity(Mat::Identity(16, 16), v), 16.0 / 17.0 * rest, 1e-12);
}

TEST(WeightSpectrum, BruteForceProjection) {
  // Expand on Pauli words explicitly for two qubits.
  const Mat v = random_unitary(4, 12);
  const Axis ax[3] = {Axis::X, Axis::Y, Axis::Z};
  std::vector<Mat> ops = {Mat(pauli_i())};
  for (Axis a : ax) ops.push_back(Mat(pauli(a)));
  double w[3] = {0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) w[(a > 0) + (b > 0)] += std::norm((kron(ops[a], ops[b]).adjoint() * v).trace() / 4.0);
  const auto ws = pauli_weight_spectrum(v);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ws.absolute[k], w[k], 1e-13) << k;
}

TEST(WeightSpectrum, TooManyQubits) { EXPECT_THROW(pauli_weight_spectrum(Mat::Identity(128, 128)), ConfigError); }

TEST(Slopes, PowerLaws) {
  std::vector<double> x, y6, y2;
  for (double v : {0.01, 0.02, 0.04, 0.08}) {
    x.push_back(v);
    y6.push_back(3 * std::pow(v, 6));
    y2.push_back(0.5 * v * v);
  }
  EXPECT_NEAR(loglog_fit(x, y6), 6.0, 1e-10);
  EXPECT_NEAR(loglog_fit(x, y2), 2.0, 1e-10);
  for (double s : loglog_slope(x, y6)) EXPECT_NEAR(s, 6.0, 1e-10);
}

TEST(Slopes, FloorCensorsPoints) {
  const std::vector<double> x = {0, 0.1, 0.2, 0.4}, y = {0, 1e-20, 1e-4, 4e-4};
  const auto s = loglog_slope(x, y);
  EXPECT_TRUE(std::isnan(s[0]));
  EXPECT_TRUE(std::isnan(s[1]));
  EXPECT_TRUE(std::isnan(s[2]));
  EXPECT_NEAR(s[3], 2.0, 1e-12);
  EXPECT_THROW(loglog_fit({0.1, 0.2}, {1e-20, 1e-4}), NumericError);
}

struct SmallGate {
  QubitGraph g = build_graph("chain", 2, design_coupling(5));
  Schedule s;
  EvolveOptions opt;
  SmallGate() {
    GateSpec spec;
    spec.kind = GateKind::Cnot;
    spec.pairs = {{0, 1}};
    s = compose_gate(spec, g, PulseFamily::standard(0));
    opt.steps_per_tau_p = 256;
  }
};

TEST(Sweep, ZeroPointMatchesSingleRun) {
  SmallGate sg;
  DisorderModel d;
  d.seed = 3;
  d.num_draws = 4;
  const auto rows = sweep(sg.s, sg.g, {0.0, 0.05}, d, sg.opt);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].draws, 1);
  EXPECT_EQ(rows[1].draws, 4);
  const auto r = simulate_gate(sg.s, sg.g, {0, 0}, sg.opt, GateMeta{});
  EXPECT_EQ(rows[0].mean_infidelity, r.infidelity);
  // The 0.05 point is the mean over the same draws a caller would make.
  d.delta_rms = 0.05;
  double sum = 0;
  for (int m = 0; m < 4; ++m) sum += infidelity(sg.s.ideal, evolve(sg.s, sg.g, d.draw(m, 2), sg.opt).matrix);
  EXPECT_NEAR(rows[1].mean_infidelity, sum / 4, 1e-15);
}

TEST(Sweep, DeterministicAndConsistentUnderMoreDraws) {
  SmallGate sg;
  DisorderModel d;
  d.seed = 11;
  d.num_draws = 8;
  const auto a = sweep(sg.s, sg.g, {0.1}, d, sg.opt);
  const auto b = sweep(sg.s, sg.g, {0.1}, d, sg.opt);
  EXPECT_EQ(a[0].mean_infidelity, b[0].mean_infidelity);
  d.num_draws = 16;
  const auto c = sweep(sg.s, sg.g, {0.1}, d, sg.opt);
  EXPECT_NEAR(a[0].mean_infidelity, c[0].mean_infidelity, 3 * (a[0].stderr_ + c[0].stderr_));
}

TEST(Sweep, RejectsBadGrid) {
  SmallGate sg;
  DisorderModel d;
  EXPECT_THROW(sweep(sg.s, sg.g, {}, d, sg.opt), ConfigError);
  EXPECT_THROW(sweep(sg.s, sg.g, {-0.1}, d, sg.opt), ConfigError);
}

TEST(SweepCsv, HeaderAndRowShape) {
  std::vector<SweepRow> rows(2);
  rows[0].delta_rms = 0;
  rows[0].slope = std::numeric_limits<double>::quiet_NaN();
  rows[1].delta_rms = 0.1;
  rows[1].mean_infidelity = 1e-6;
  rows[1].slope = 4;
  GateMeta m;
  m.gate = "cnot";
  m.seed = 7;
  std::ostringstream os;
  write_sweep_csv(os, rows, m, 6);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find("\r\n")), "delta_rms,mean_infidelity,stderr,slope,n,gate,pulse_order,nrep,seed");
  EXPECT_NE(s.find("0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00,,6,cnot,2,5,7\r\n"),
            std::string::npos);
  EXPECT_NE(s.find("1.0000000000000001e-01,9.9999999999999995e-07"), std::string::npos);
}

TEST(Report, JsonCarriesMetadata) {
  SmallGate sg;
  GateMeta m;
  m.gate = "cnot";
  m.graph = "chain2";
  const auto r = simulate_gate(sg.s, sg.g, {0.01, -0.02}, sg.opt, m);
  const json j = report_to_json(r);
  EXPECT_EQ(j.at("gate"), "cnot");
  EXPECT_NEAR(j.at("infidelity").get<double>(), r.infidelity, 0);
  EXPECT_LT(r.unitarity_defect, 1e-9);
  EXPECT_TRUE(r.has_spectrum);
}

}  // namespace
}  // namespace isingdd
