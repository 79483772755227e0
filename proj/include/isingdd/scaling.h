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

#ifndef ISINGDD_SCALING_H
#define ISINGDD_SCALING_H

#include <boost/multiprecision/cpp_int.hpp>

#include "isingdd/network.h"

namespace isingdd {

using BigInt = boost::multiprecision::cpp_int;

/// Number of s-site connected clusters containing the root of the z-regular
/// tree: s z [(z-1)s]! / (s! [(z-2)s+2]!). Valid for z >= 2, s >= 1.
BigInt cluster_count(int z, int s);
/// Site-convention alias of cluster_count.
inline BigInt cluster_count_sites(int z, int s) { return cluster_count(z, s); }
/// s-bond clusters touching the root; an s-bond tree cluster has s + 1 sites.
BigInt cluster_count_bonds(int z, int s);

/// 2^{(z-1) H2(1/(z-1))}, z >= 3.
double mu_max(int z);
/// True when N_s <= mu_max^s for every s in [1, s_max].
bool mu_max_bounds_counts(int z, int s_max = 30);

struct PulseErrorBound {
  /// e^a - sum_{s<=K} a^s / s!
  double tail = 0;
  /// e^a a^{K+1} / (K+1)!
  double bound = 0;
  /// N_cyc a^{K+1} / (K+1)!; must be << 1. Zero when N_cyc is not given.
  double cycle_product = 0;
};

PulseErrorBound pulse_error_bound(double alpha_p, int K, double n_cyc = 0);

/// Tightest of the s-bond cluster bounds that apply at (alpha, s, K).
double cluster_norm_bound(double alpha, int s, int K);
/// (e alpha)^{min(s, K+1)}; throws for alpha > 1.
double cluster_norm_generic(double alpha, int s, int K);

struct ClusterBoundInput {
  int z = 4;
  int K = 2;
  double alpha = 0;
  double n_rep = 1;
  double C = 1;
  double mu = 10;
};

struct CoveredFraction {
  double f_bound = 0;
  double f_gate = 0;
};

/// Conservative bound and the s = K+1 dominated estimate. Throws when
/// e alpha mu >= 1 or mu <= 1.
CoveredFraction covered_fraction(const ClusterBoundInput &in);

/// 16 (8 N_rep + 36) in units of tau_p.
double toric_cycle(int n_rep);

struct ToricBudget {
  double tau_cyc = 0;
  double alpha_c = 0;
  double n_rep_c = 0;
  double f_gate_at_alpha_c = 0;
};

/// Solves 10 f_gate(alpha) = p_c with N_rep = pi / alpha by bisection on
/// (0, 1/(e mu)). tau_cyc is reported for the given n_rep (>= 5).
ToricBudget toric_budget(int n_rep, double p_c, int K, double C, double mu);

/// Sum of |J_ij| over edges. With the 1/2 J_ij per-edge convention of the
/// simulated Hamiltonian this is twice the spectral norm of the Ising term on
/// a bipartite graph; see ising_matrix_norm.
double ising_norm(const QubitGraph &g);
/// max |eigenvalue| of (1/2) sum J_ij z_i z_j, by scanning the diagonal.
double ising_matrix_norm(const QubitGraph &g);

}  // namespace isingdd

#endif
