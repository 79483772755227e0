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

#include "isingdd/avgham.h"

#include <cmath>
#include <sstream>

#include "isingdd/network.h"
#include "isingdd/sequences.h"

namespace isingdd {

namespace {

constexpr double kZeroTol = 1e-9;

void require_zero(double v, const char *name, const char *what) {
  if (std::abs(v) > kZeroTol) {
    std::ostringstream os;
    os << what << " assumes " << name << " = 0, got " << v;
    throw ConfigError(os.str());
  }
}

// Operator on the joint bath space with op acting on bath i.
Mat bath_op(const std::vector<BathSpec> &baths, size_t i, const Mat &op) {
  Mat out = Mat::Identity(1, 1);
  for (size_t k = 0; k < baths.size(); ++k)
    out = kron(out, k == i ? op : Mat(Mat::Identity(baths[k].dim, baths[k].dim)));
  return out;
}

int joint_dim(const std::vector<BathSpec> &baths) {
  int d = 1;
  for (const auto &b : baths) d *= b.dim;
  return d;
}

Mat spin_op(int n, int q, const Mat2 &p) { return embed1(p, q, n); }

}  // namespace

BathSpec BathSpec::scalar(double a, double b) {
  BathSpec s;
  s.dim = 1;
  s.A = Mat::Constant(1, 1, a);
  s.B = Mat::Constant(1, 1, b);
  return s;
}

BathSpec BathSpec::random(int dim, unsigned long long seed) {
  BathSpec s;
  s.dim = dim;
  s.A = random_hermitian(dim, seed);
  s.B = random_hermitian(dim, seed ^ 0x9e3779b97f4a7c15ULL);
  return s;
}

void BathSpec::validate() const {
  if (dim < 1) throw ConfigError("bath dimension must be positive");
  if (A.rows() != dim || A.cols() != dim || B.rows() != dim || B.cols() != dim)
    throw ConfigError("bath operator dimension mismatch");
  if ((A - A.adjoint()).norm() > 1e-12 * (1 + A.norm()) || (B - B.adjoint()).norm() > 1e-12 * (1 + B.norm()))
    throw ConfigError("bath operators must be Hermitian");
}

Mat pulse_avg_ham(const PulseCoefficients &c, double phi0, const BathSpec &bath, double tau_p, int order) {
  bath.validate();
  if (order < 0 || order > 2) throw ConfigError("order must be 0, 1 or 2");
  if (std::abs(c.phi0 - phi0) > 1e-12) throw ConfigError("coefficients were computed at a different angle");
  const Mat &A = bath.A, &B = bath.B;
  const double C = std::cos(phi0 / 2), S = std::sin(phi0 / 2);
  const Mat sx = pauli(Axis::X), sy = pauli(Axis::Y), sz = pauli(Axis::Z);
  const Mat id2 = Mat::Identity(2, 2);
  const Mat tilt = S * sy + C * sz;

  Mat h = kron(B, id2) + c.upsilon * kron(A, tilt);
  if (order >= 1) {
    const Mat h1 = 2 * c.beta * kron(A * A, sx) + I1 * c.xi * kron(comm(B, A), C * sy - S * sz);
    h += tau_p * h1;
  }
  if (order >= 2) {
    const Mat aab = comm(A, comm(A, B));
    const Mat bba = comm(B, comm(B, A));
    const double u = c.upsilon;
    const Mat h2 = (u * u / 6 - c.delta2 - c.delta3) * kron(aab, id2) +
                   kron((u / 24 - c.delta1) * bba - 4 * c.delta4 * A * A * A, tilt);
    h += tau_p * tau_p * h2;
  }
  return h;
}

DcgVariant dcg_variant_from_string(const std::string &s) {
  if (s == "full_euler" || s == "full") return DcgVariant::FullEuler;
  if (s == "partial_euler" || s == "partial") return DcgVariant::PartialEuler;
  if (s == "y3p") return DcgVariant::Y3p;
  if (s == "y3p_symmetrized") return DcgVariant::Y3pSymmetrized;
  throw ConfigError("unknown DCG variant '" + s + "'");
}

std::string dcg_variant_name(DcgVariant v) {
  switch (v) {
    case DcgVariant::FullEuler:
      return "full_euler";
    case DcgVariant::PartialEuler:
      return "partial_euler";
    case DcgVariant::Y3p:
      return "y3p";
    case DcgVariant::Y3pSymmetrized:
      return "y3p_symmetrized";
  }
  return "?";
}

int dcg_variant_spins(DcgVariant v) { return v == DcgVariant::FullEuler || v == DcgVariant::PartialEuler ? 1 : 4; }

Mat dcg_avg_ham(DcgVariant v, const PulseCoefficients &c, const PulseCoefficients &c_pi, double phi0,
                const std::vector<BathSpec> &baths, double tau_p, int order) {
  const int n = dcg_variant_spins(v);
  if (int(baths.size()) != n) throw ConfigError("wrong number of baths for " + dcg_variant_name(v));
  for (const auto &b : baths) b.validate();
  if (order < 0 || order > 2) throw ConfigError("order must be 0, 1 or 2");
  if (std::abs(c.phi0 - phi0) > 1e-12) throw ConfigError("coefficients were computed at a different angle");

  const double C = std::cos(phi0 / 2), S = std::sin(phi0 / 2);
  const double kappa = c_pi.kappa(), alpha = c_pi.alpha(), zeta = c_pi.zeta();
  const double ups = c.upsilon, beta = c.beta, xi = c.xi;
  const std::string what = dcg_variant_name(v) + " order " + std::to_string(order);
  const int dim_b = joint_dim(baths);
  const Mat id_s = Mat::Identity(1 << n, 1 << n);

  Mat sum_b = Mat::Zero(dim_b, dim_b);
  for (size_t i = 0; i < baths.size(); ++i) sum_b += bath_op(baths, i, baths[i].B);
  Mat h = kron(sum_b, id_s);

  if (v == DcgVariant::FullEuler || v == DcgVariant::PartialEuler) {
    const Mat &A = baths[0].A, &B = baths[0].B;
    const Mat sx = pauli(Axis::X), sy = pauli(Axis::Y), sz = pauli(Axis::Z);
    const Mat ab = comm(A, B);
    const Mat a2 = A * A;
    const Mat aab = comm(A, ab);
    const Mat bba = comm(B, comm(B, A));
    const Mat a2b = comm(a2, B);
    const Mat a3 = a2 * A;
    if (v == DcgVariant::FullEuler) {
      if (order >= 1) {
        Mat h1 = 0.5 * I1 * kappa * kron(ab, sy) + 0.5 * beta * kron(a2, sy) -
                 0.25 * I1 * kron(ab, Mat((2 * kappa - xi * C - 2 * ups * S) * sx + (5 * ups * C - xi * S) * sz));
        h += tau_p * h1;
      }
      if (order >= 2) {
        require_zero(kappa, "kappa", what.c_str());
        require_zero(ups, "upsilon", what.c_str());
        const double d23 = c.delta2 + c.delta3;
        const double g23 = c_pi.gamma(2) + c_pi.gamma(3);
        Mat h2 = I1 * kron(a2b, Mat(-alpha * sx + (alpha - 29 * beta / 8) * sy)) +
                 kron(bba, Mat((29 * xi * S - 6 * c.delta1 * C - 8 * zeta) / 16 * sz +
                               (29 * xi * C + 6 * c.delta1 * S) / 16 * sx)) -
                 0.5 * (g23 + 1.75 * d23) * kron(aab, Mat(Mat::Identity(2, 2))) +
                 1.5 * c.delta4 * kron(a3, Mat(S * sx - C * sz));
        h += tau_p * tau_p * h2;
      }
    } else {
      h -= 0.5 * ups * S * kron(A, sx);
      if (order >= 1) {
        require_zero(kappa, "kappa", what.c_str());
        require_zero(ups, "upsilon", what.c_str());
        Mat h1 = kron(a2, Mat(alpha * sx + beta * sy)) + 0.5 * I1 * xi * kron(ab, Mat(C * sx + S * sz));
        h += tau_p * h1;
      }
      if (order >= 2) {
        require_zero(alpha, "alpha", what.c_str());
        require_zero(beta, "beta", what.c_str());
        const double d4 = c.delta4;
        Mat h2 = kron(a3, Mat(5 * S * d4 * sx - 3 * C * d4 * sz)) -
                 ((c_pi.gamma(2) + c_pi.gamma(3)) / 2 + 1.25 * (c.delta2 + c.delta3)) *
                     kron(aab, Mat(Mat::Identity(2, 2))) +
                 kron(bba, Mat((11 * xi * C / 8 + 5 * c.delta1 * S / 4) * sx -
                               (zeta / 2 - 13 * xi * S / 8 + 3 * c.delta1 * C / 4) * sz));
        h += tau_p * tau_p * h2;
      }
    }
    return h;
  }

  // Four-spin open chain; spins 0 and 2 carry the rotation, 1 and 3 idle.
  if (order >= 2) throw ConfigError(what + " has no closed form");
  const std::vector<int> rotated = {0, 2};
  const Mat sx = pauli(Axis::X), sz = pauli(Axis::Z);
  if (v == DcgVariant::Y3p) {
    for (int q : rotated) h -= 0.5 * ups * S * kron(bath_op(baths, q, baths[q].A), spin_op(n, q, sx));
    if (order >= 1) {
      require_zero(kappa, "kappa", what.c_str());
      require_zero(alpha, "alpha", what.c_str());
      require_zero(ups, "upsilon", what.c_str());
      require_zero(beta, "beta", what.c_str());
      require_zero(xi, "xi", what.c_str());
      Mat h1 = Mat::Zero(h.rows(), h.cols());
      for (int q = 0; q < n; ++q) {
        const double coef = (q == 0 || q == 2) ? -0.25 : 2.25;
        const Mat ba = bath_op(baths, q, comm(baths[q].B, baths[q].A));
        h1 += I1 * coef * kron(ba, spin_op(n, q, sz));
      }
      h += tau_p * h1;
    }
    return h;
  }

  // Symmetrized chain: zeroth order is the bare bath.
  if (order >= 1) {
    require_zero(kappa, "kappa", what.c_str());
    require_zero(ups, "upsilon", what.c_str());
    require_zero(alpha, "alpha", what.c_str());
    require_zero(beta, "beta", what.c_str());
    const double C2 = std::cos(phi0), S2 = std::sin(phi0);
    Mat h1 = Mat::Zero(h.rows(), h.cols());
    for (int q : rotated) {
      const Mat ab = bath_op(baths, q, comm(baths[q].A, baths[q].B));
      h1 += 0.25 * I1 * xi * C * kron(ab, Mat(C2 * spin_op(n, q, sx) + S2 * spin_op(n, q, sz)));
    }
    h += tau_p * h1;
  }
  return h;
}

OpenSystem bath_system(const std::vector<BathSpec> &baths, const std::vector<std::pair<int, int>> &edges, double J) {
  OpenSystem sys;
  sys.n_spins = int(baths.size());
  sys.bath_dim = joint_dim(baths);
  for (size_t i = 0; i < baths.size(); ++i) {
    baths[i].validate();
    sys.terms.push_back({1.0, bath_op(baths, i, baths[i].B), {}});
    sys.terms.push_back({1.0, bath_op(baths, i, baths[i].A), {{int(i), Axis::Z}}});
  }
  if (J != 0) {
    const Mat id = Mat::Identity(sys.bath_dim, sys.bath_dim);
    for (auto [a, b] : edges) sys.terms.push_back({0.5 * J, id, {{a, Axis::Z}, {b, Axis::Z}}});
  }
  return sys;
}

Schedule single_pulse_schedule(const PulseShape &shape) {
  Schedule s = Schedule::empty(1);
  Segment seg;
  seg.shape = shape;
  s.segments.push_back(seg);
  s.total_duration = shape.duration;
  s.ideal = s.nominal_unitary();
  s.label = "pulse";
  return s;
}

Schedule dcg_variant_schedule(DcgVariant v, double phi0, const PulseShape &pi_shape, const PulseShape &rot_shape) {
  const PulseFamily fam = PulseFamily::explicit_shapes(pi_shape, {rot_shape});
  switch (v) {
    case DcgVariant::FullEuler:
      return eulerian_dcg(EulerVariant::Full, phi0, fam);
    case DcgVariant::PartialEuler:
      return eulerian_dcg(EulerVariant::Partial, phi0, fam);
    case DcgVariant::Y3p:
      return dcg_single(Axis::Y, phi0, {0, 2}, build_graph("chain", 4, 0.0), fam);
    case DcgVariant::Y3pSymmetrized:
      return dcg_symmetrized(Axis::Y, phi0, {0, 2}, build_graph("chain", 4, 0.0), fam);
  }
  throw ConfigError("unknown DCG variant");
}

Mat numeric_avg_ham(const Schedule &schedule, const OpenSystem &system, double tau_p, int steps_per_tau_p) {
  const Mat r = evolve_toggling(schedule, system, tau_p, steps_per_tau_p);
  return extract_avg_hamiltonian_strict(r, schedule.total_duration * tau_p);
}

Mat numeric_avg_ham_uncoupled(const Schedule &schedule, const std::vector<BathSpec> &baths, double tau_p,
                              int steps_per_tau_p) {
  const int n = int(baths.size());
  if (schedule.n != n) throw ConfigError("one bath per spin required");
  const int dim_b = joint_dim(baths);
  Mat h = Mat::Zero(dim_b << n, dim_b << n);
  const Mat2 *paulis[4] = {&pauli_i(), &pauli(Axis::X), &pauli(Axis::Y), &pauli(Axis::Z)};
  for (int q = 0; q < n; ++q) {
    // The spin's own segments, moved to qubit 0 of a one-spin schedule.
    Schedule local = Schedule::empty(1);
    local.total_duration = schedule.total_duration;
    for (Segment seg : schedule.segments)
      if (seg.qubit == q) {
        seg.qubit = 0;
        local.segments.push_back(seg);
      }
    local.ideal = local.nominal_unitary();
    const Mat hq = numeric_avg_ham(local, bath_system({baths[q]}), tau_p, steps_per_tau_p);
    // hq = sum_s M_s (x) sigma_s with M_s = Tr_spin[(1 (x) sigma_s) hq] / 2.
    const int d = baths[q].dim;
    for (int k = 0; k < 4; ++k) {
      Mat m(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          m(a, b) = 0.5 * (paulis[k]->transpose().cwiseProduct(hq.block(2 * a, 2 * b, 2, 2))).sum();
      h += kron(bath_op(baths, q, m), spin_op(n, q, *paulis[k]));
    }
  }
  return h;
}

}  // namespace isingdd
