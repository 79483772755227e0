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

#include "isingdd/network.h"

#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <set>

namespace isingdd {

std::vector<std::vector<std::pair<int, double>>> QubitGraph::neighbors() const {
  std::vector<std::vector<std::pair<int, double>>> nb(n);
  for (const auto &e : edges) {
    nb[e.i].push_back({e.j, e.J});
    nb[e.j].push_back({e.i, e.J});
  }
  return nb;
}

const Edge *QubitGraph::edge(int a, int b) const {
  for (const auto &e : edges)
    if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) return &e;
  return nullptr;
}

bool QubitGraph::adjacent(int a, int b) const { return edge(a, b) != nullptr; }

int QubitGraph::degree(int q) const {
  int d = 0;
  for (const auto &e : edges) d += (e.i == q) + (e.j == q);
  return d;
}

int QubitGraph::max_degree() const {
  int d = 0;
  for (int q = 0; q < n; ++q) d = std::max(d, degree(q));
  return d;
}

QubitGraph build_graph(const std::string &kind, int n, double J,
                       const std::vector<std::pair<int, int>> &custom_edges,
                       const std::vector<int> &labels) {
  if (n < 2) throw ConfigError("graph needs n >= 2");
  if (n > kMaxDenseQubits) throw ConfigError("graph too large for dense simulation");
  QubitGraph g;
  g.kind = kind;
  g.n = n;
  g.J = J;
  std::vector<std::pair<int, int>> pairs;
  if (kind == "chain") {
    for (int i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
  } else if (kind == "star") {
    for (int i = 1; i < n; ++i) pairs.push_back({0, i});
  } else if (kind == "custom") {
    pairs = custom_edges;
  } else {
    throw ConfigError("unknown graph kind '" + kind + "'");
  }
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ConfigError("edge endpoint out of range");
    if (a == b) throw ConfigError("self-loop in graph");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw ConfigError("duplicate edge");
    g.edges.push_back({a, b, J});
  }

  // Two-coloring by BFS; each component starts on sublattice A.
  auto nb = g.neighbors();
  std::vector<int> color(n, -1);
  for (int s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [w, c] : nb[v]) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          q.push_back(w);
        } else if (color[w] == color[v]) {
          throw ConfigError("graph is not bipartite");
        }
      }
    }
  }
  if (!labels.empty()) {
    if (int(labels.size()) != n) throw ConfigError("label count does not match n");
    for (const auto &e : g.edges)
      if (labels[e.i] == labels[e.j]) throw ConfigError("labels are not a valid two-coloring");
    for (int l : labels)
      if (l != 0 && l != 1) throw ConfigError("labels must be 0 (A) or 1 (B)");
    color = labels;
  }
  g.sublattice = color;
  return g;
}

std::vector<double> DisorderModel::draw(int m, int n) const {
  std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32), std::uint32_t(m),
                    0x1d0dU};
  std::mt19937_64 rng(seq);
  auto unit = [&] { return (double(rng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<double> out(n);
  for (int i = 0; i < n; i += 2) {
    double r = std::sqrt(-2 * std::log(unit()));
    double th = 2 * std::numbers::pi * unit();
    out[i] = delta_rms * r * std::cos(th);
    if (i + 1 < n) out[i + 1] = delta_rms * r * std::sin(th);
  }
  return out;
}

std::vector<double> drift_diagonal(const QubitGraph &g, const std::vector<double> &deltas) {
  const int n = g.n;
  if (int(deltas.size()) != n) throw ConfigError("delta vector length must equal n");
  const size_t dim = size_t(1) << n;
  std::vector<double> d(dim, 0.0);
  for (size_t k = 0; k < dim; ++k) {
    double e = 0;
    for (const auto &ed : g.edges) {
      int si = (k >> qubit_bit(ed.i, n)) & 1 ? -1 : 1;
      int sj = (k >> qubit_bit(ed.j, n)) & 1 ? -1 : 1;
      e += 0.5 * ed.J * si * sj;
    }
    for (int q = 0; q < n; ++q) e += 0.5 * deltas[q] * ((k >> qubit_bit(q, n)) & 1 ? -1 : 1);
    d[k] = e;
  }
  return d;
}

Mat assemble_hamiltonian(const QubitGraph &g, const std::vector<double> &deltas,
                         const std::vector<Drive> &drive) {
  if (g.n > kMaxDenseQubits) throw ConfigError("dimension overflow");
  auto d = drift_diagonal(g, deltas);
  const int dim = 1 << g.n;
  Mat h = Mat::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) h(k, k) = d[k];
  for (const auto &dr : drive) {
    if (dr.qubit < 0 || dr.qubit >= g.n) throw ConfigError("drive qubit out of range");
    h += 0.5 * dr.amplitude * embed1(pauli(dr.axis), dr.qubit, g.n);
  }
  return h;
}

}  // namespace isingdd
