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

#include "isingdd/scaling.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace isingdd {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// sum_{j > K} a^j / j!, summed directly so small a keeps full precision.
double exp_tail(double a, int K) {
  if (a > 1) {
    double s = 0, t = 1;
    for (int j = 0; j <= K; ++j) {
      s += t;
      t *= a / (j + 1);
    }
    return std::exp(a) - s;
  }
  double term = 1;
  for (int j = 1; j <= K + 1; ++j) term *= a / j;
  double sum = 0;
  for (int j = K + 1; j < K + 200 && term > 1e-30 * sum; ++j) {
    sum += term;
    term *= a / (j + 1);
  }
  return sum;
}

}  // namespace

BigInt cluster_count(int z, int s) {
  if (z < 2) throw ConfigError("cluster_count needs z >= 2");
  if (s < 1) throw ConfigError("cluster_count needs s >= 1");
  BigInt num = BigInt(s) * z * factorial((z - 1) * s);
  BigInt den = factorial(s) * factorial((z - 2) * s + 2);
  return num / den;
}

BigInt cluster_count_bonds(int z, int s) {
  if (s < 0) throw ConfigError("bond count must be non-negative");
  return cluster_count(z, s + 1);
}

double mu_max(int z) {
  if (z < 3) throw ConfigError("mu_max needs z >= 3");
  // 2^{(z-1) H(1/(z-1))} in closed form; exact in floating point for small z.
  return std::pow(double(z - 1), z - 1) / std::pow(double(z - 2), z - 2);
}

bool mu_max_bounds_counts(int z, int s_max) {
  const double mu = mu_max(z);
  for (int s = 1; s <= s_max; ++s) {
    // Compare in log space; N_s fits in a double for the sizes of interest.
    const double lhs = std::log(cluster_count(z, s).convert_to<double>());
    if (lhs > s * std::log(mu) + 1e-12) return false;
  }
  return true;
}

PulseErrorBound pulse_error_bound(double alpha_p, int K, double n_cyc) {
  if (alpha_p < 0) throw ConfigError("alpha_p must be non-negative");
  if (K < 0) throw ConfigError("K must be non-negative");
  PulseErrorBound b;
  b.tail = exp_tail(alpha_p, K);
  const double lead = std::pow(alpha_p, K + 1) / std::tgamma(K + 2.0);
  b.bound = std::exp(alpha_p) * lead;
  b.cycle_product = n_cyc * lead;
  return b;
}

double cluster_norm_generic(double alpha, int s, int K) {
  if (alpha > 1) throw ConfigError("generic cluster bound needs alpha <= 1");
  return std::pow(std::numbers::e * alpha, std::min(s, K + 1));
}

double cluster_norm_bound(double alpha, int s, int K) {
  if (alpha < 0) throw ConfigError("alpha must be non-negative");
  if (s < 1) throw ConfigError("cluster size must be positive");
  double best = std::pow(std::expm1(alpha), s);
  if (alpha <= 1) best = std::min(best, cluster_norm_generic(alpha, s, K));
  if (s == 1) best = std::min(best, std::exp(alpha) * std::pow(alpha, K + 1) / std::tgamma(K + 2.0));
  if (s == 2 && K == 2) best = std::min(best, std::exp(2 * alpha) * std::pow(alpha, 3));
  return best;
}

CoveredFraction covered_fraction(const ClusterBoundInput &in) {
  if (in.alpha < 0) throw ConfigError("alpha must be non-negative");
  if (in.mu <= 1) throw ConfigError("mu must exceed 1");
  const double x = std::numbers::e * in.alpha * in.mu;
  if (x >= 1) {
    std::ostringstream os;
    os << "cluster series diverges: e alpha mu = " << x;
    throw ConfigError(os.str());
  }
  CoveredFraction f;
  const double k1 = in.K + 1;
  f.f_bound = std::numbers::pi * in.C * in.n_rep * k1 * std::pow(x, k1) *
              (in.mu / ((in.mu - 1) * (in.mu - 1)) + 1 / ((1 - x) * (1 - x)));
  f.f_gate = 2 * in.C * in.n_rep * std::pow(in.alpha * in.mu, k1);
  return f;
}

double toric_cycle(int n_rep) { return 16.0 * (8.0 * n_rep + 36.0); }

ToricBudget toric_budget(int n_rep, double p_c, int K, double C, double mu) {
  if (n_rep < 5) throw ConfigError("toric budget assumes N_rep >= 5");
  if (mu <= 1) throw ConfigError("mu must exceed 1");
  ToricBudget out;
  out.tau_cyc = toric_cycle(n_rep);
  auto excess = [&](double a) {
    ClusterBoundInput in;
    in.K = K;
    in.alpha = a;
    in.n_rep = std::numbers::pi / a;
    in.C = C;
    in.mu = mu;
    return 10 * covered_fraction(in).f_gate - p_c;
  };
  double lo = 0, hi = 1 / (std::numbers::e * mu) * (1 - 1e-12);
  // At lo the excess tends to -p_c (or to +inf for K = 0).
  const double f_lo = K >= 1 ? -p_c : 1.0;
  const double f_hi = excess(hi);
  if (!(p_c > 0) || !(f_lo < 0 && f_hi > 0)) {
    std::ostringstream os;
    os << "no threshold root in (0, 1/(e mu)) for p_c = " << p_c;
    throw ConfigError(os.str());
  }
  while ((hi - lo) > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0 ? hi : lo) = mid;
  }
  out.alpha_c = 0.5 * (lo + hi);
  out.n_rep_c = std::numbers::pi / out.alpha_c;
  out.f_gate_at_alpha_c = (excess(out.alpha_c) + p_c) / 10;
  return out;
}

double ising_norm(const QubitGraph &g) {
  double s = 0;
  for (const auto &e : g.edges) s += std::abs(e.J);
  return s;
}

double ising_matrix_norm(const QubitGraph &g) {
  const auto d = drift_diagonal(g, std::vector<double>(g.n, 0.0));
  double m = 0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace isingdd
