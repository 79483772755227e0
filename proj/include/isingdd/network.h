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

#ifndef ISINGDD_NETWORK_H
#define ISINGDD_NETWORK_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "isingdd/linalg.h"

namespace isingdd {

inline constexpr int kMaxDenseQubits = 10;

struct Edge {
  int i = 0;
  int j = 0;
  double J = 0;
};

/// Bipartite Ising network. Sublattice 0 is A, 1 is B.
struct QubitGraph {
  std::string kind;
  int n = 0;
  double J = 0;
  std::vector<Edge> edges;
  std::vector<int> sublattice;

  std::vector<std::vector<std::pair<int, double>>> neighbors() const;
  bool adjacent(int a, int b) const;
  int degree(int q) const;
  int max_degree() const;
  const Edge *edge(int a, int b) const;
};

/// kind is "chain", "star" or "custom". For custom graphs the edges are
/// given as (i, j) pairs with coupling J; labels are optional.
QubitGraph build_graph(const std::string &kind, int n, double J,
                       const std::vector<std::pair<int, int>> &custom_edges = {},
                       const std::vector<int> &labels = {});

struct DisorderModel {
  double delta_rms = 0;
  std::uint64_t seed = 0;
  int num_draws = 1;

  /// Draw set m: n zero-mean Gaussian shifts, reproducible from (seed, m) alone.
  std::vector<double> draw(int m, int n) const;
};

struct Drive {
  int qubit = 0;
  Axis axis = Axis::X;
  double amplitude = 0;
};

/// Diagonal of 1/2 sum J s_i s_j + 1/2 sum Delta_i s_i in the computational basis.
std::vector<double> drift_diagonal(const QubitGraph &g, const std::vector<double> &deltas);

/// Dense H = 1/2 sum J zz + 1/2 sum Delta z + 1/2 sum V sigma.
Mat assemble_hamiltonian(const QubitGraph &g, const std::vector<double> &deltas,
                         const std::vector<Drive> &drive);

/// Bit of qubit q in a basis index (qubit 0 is the most significant).
inline int qubit_bit(int q, int n) { return n - 1 - q; }

}  // namespace isingdd

#endif
