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
#include <random>

#include <gtest/gtest.h>

#include "isingdd/network.h"

namespace isingdd {
namespace {

TEST(BuildGraph, StarSix) {
  const auto g = build_graph("star", 6, 0.1);
  ASSERT_EQ(g.edges.size(), 5u);
  for (const auto &e : g.edges) EXPECT_TRUE(e.i == 0 || e.j == 0);
  EXPECT_EQ(g.degree(0), 5);
  EXPECT_EQ(g.max_degree(), 5);
  for (int q = 1; q < 6; ++q) EXPECT_NE(g.sublattice[q], g.sublattice[0]);
}

TEST(BuildGraph, ChainFour) {
  const auto g = build_graph("chain", 4, 0.1);
  EXPECT_EQ(g.edges.size(), 3u);
  EXPECT_EQ(g.max_degree(), 2);
  EXPECT_TRUE(g.adjacent(1, 2));
  EXPECT_FALSE(g.adjacent(0, 2));
  for (const auto &e : g.edges) EXPECT_NE(g.sublattice[e.i], g.sublattice[e.j]);
}

TEST(BuildGraph, Rejections) {
  EXPECT_THROW(build_graph("custom", 3, 1.0, {{0, 1}, {1, 2}, {2, 0}}), ConfigError);
  EXPECT_THROW(build_graph("custom", 3, 1.0, {{0, 1}, {1, 0}}), ConfigError);
  EXPECT_THROW(build_graph("custom", 3, 1.0, {{1, 1}}), ConfigError);
  EXPECT_THROW(build_graph("chain", 1, 1.0), ConfigError);
  EXPECT_THROW(build_graph("chain", 11, 1.0), ConfigError);
  EXPECT_THROW(build_graph("custom", 3, 1.0, {{0, 1}}, {0, 0, 1}), ConfigError);
}

TEST(Hamiltonian, TwoQubitIsing) {
  const double J = 0.3;
  const auto h = assemble_hamiltonian(build_graph("chain", 2, J), {0, 0}, {});
  const double want[4] = {J / 2, -J / 2, -J / 2, J / 2};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(h(k, k).real(), want[k], 1e-15);
  EXPECT_NEAR((h - Mat(h.diagonal().asDiagonal())).norm(), 0.0, 1e-15);
}

TEST(Hamiltonian, ChemicalShiftOnly) {
  const double d = 0.7;
  const auto h = assemble_hamiltonian(build_graph("chain", 2, 0.0), {d, 0}, {});
  // Qubit 0 is the most significant bit.
  EXPECT_NEAR(h(0, 0).real(), d / 2, 1e-15);
  EXPECT_NEAR(h(3, 3).real(), -d / 2, 1e-15);
}

TEST(Hamiltonian, DriftNormBruteForce) {
  // With the 1/2 convention the drift maximum is (sum J + sum |Delta|) / 2.
  const auto g = build_graph("star", 5, 0.2);
  const std::vector<double> deltas = {0.1, 0.3, 0.05, 0.2, 0.4};
  const Mat h = assemble_hamiltonian(g, deltas, {});
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const double brute = es.eigenvalues().cwiseAbs().maxCoeff();
  double sj = 0, sd = 0;
  for (const auto &e : g.edges) sj += e.J;
  for (double d : deltas) sd += d;
  EXPECT_NEAR(brute, 0.5 * sj + 0.5 * sd, 1e-12);
}

TEST(Hamiltonian, HermitianAndLinear) {
  const auto g = build_graph("chain", 3, 0.4);
  const std::vector<double> d1 = {0.1, -0.2, 0.3}, zero = {0, 0, 0};
  const std::vector<Drive> drive = {{0, Axis::X, 1.5}, {2, Axis::Y, -0.7}};
  const Mat full = assemble_hamiltonian(g, d1, drive);
  EXPECT_NEAR((full - full.adjoint()).norm(), 0.0, 1e-15);
  const Mat ising = assemble_hamiltonian(g, zero, {});
  const Mat shift = assemble_hamiltonian(build_graph("chain", 3, 0.0), d1, {});
  const Mat ctrl = assemble_hamiltonian(build_graph("chain", 3, 0.0), zero, drive);
  EXPECT_NEAR((full - ising - shift - ctrl).norm(), 0.0, 1e-14);
}

TEST(Disorder, ReproducibleAndOrderIndependent) {
  DisorderModel d;
  d.delta_rms = 0.3;
  d.seed = 99;
  const auto a = d.draw(7, 6);
  d.draw(3, 6);
  EXPECT_EQ(a, d.draw(7, 6));
  EXPECT_NE(a, d.draw(8, 6));
}

TEST(Disorder, GaussianMoments) {
  DisorderModel d;
  d.delta_rms = 0.25;
  d.seed = 5;
  double s = 0, s2 = 0;
  const int M = 20000, n = 4;
  for (int m = 0; m < M; ++m)
    for (double x : d.draw(m, n)) {
      s += x;
      s2 += x * x;
    }
  const double N = double(M) * n;
  EXPECT_NEAR(s / N, 0.0, 4 * 0.25 / std::sqrt(N));
  EXPECT_NEAR(std::sqrt(s2 / N), 0.25, 0.01);
}

}  // namespace
}  // namespace isingdd
