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

#include "isingdd/propagator.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isingdd {

namespace {

constexpr double kMergeEps = 1e-12;

struct Window {
  double t0 = 0, t1 = 0;
  int nsteps = 1;
  std::vector<int> active;  // per qubit: soft segment index or -1
};

struct Timeline {
  std::vector<double> bounds;
  std::vector<Window> windows;
  // hard segments applied at bounds[k], in schedule order
  std::vector<std::vector<int>> hard_at;
};

Timeline build_timeline(const Schedule &s, int steps_per_tau_p) {
  std::vector<double> b{0.0, s.total_duration};
  for (const auto &seg : s.segments) {
    b.push_back(seg.start);
    b.push_back(seg.end());
  }
  std::sort(b.begin(), b.end());
  Timeline tl;
  for (double t : b)
    if (tl.bounds.empty() || t - tl.bounds.back() > kMergeEps) tl.bounds.push_back(t);
  auto index_of = [&](double t) {
    auto it = std::lower_bound(tl.bounds.begin(), tl.bounds.end(), t - kMergeEps);
    return int(it - tl.bounds.begin());
  };
  tl.hard_at.assign(tl.bounds.size(), {});
  for (size_t i = 0; i < s.segments.size(); ++i)
    if (s.segments[i].hard) tl.hard_at[index_of(s.segments[i].start)].push_back(int(i));
  for (size_t k = 0; k + 1 < tl.bounds.size(); ++k) {
    Window w;
    w.t0 = tl.bounds[k];
    w.t1 = tl.bounds[k + 1];
    w.nsteps = std::max(1, int(std::llround((w.t1 - w.t0) * steps_per_tau_p)));
    w.active.assign(s.n, -1);
    const double mid = 0.5 * (w.t0 + w.t1);
    for (size_t i = 0; i < s.segments.size(); ++i) {
      const auto &seg = s.segments[i];
      if (seg.hard || !(seg.start < mid && mid < seg.end())) continue;
      if (w.active[seg.qubit] >= 0) {
        std::ostringstream os;
        os << "overlapping segments on qubit " << seg.qubit << " near t = " << mid;
        throw ConfigError(os.str());
      }
      w.active[seg.qubit] = int(i);
    }
    tl.windows.push_back(std::move(w));
  }
  return tl;
}

// Drive on one bit of a local register, sampled at t0 + j h / 2.
struct LocalDrive {
  int bit = 0;
  Axis axis = Axis::X;
  std::vector<double> v;
};

LocalDrive sample_drive(const Segment &seg, int bit, double t0, double h, int nsteps) {
  LocalDrive d;
  d.bit = bit;
  d.axis = seg.shape.axis;
  d.v.resize(2 * nsteps + 1);
  for (int j = 0; j <= 2 * nsteps; ++j) d.v[j] = seg.shape.amplitude(t0 - seg.start + 0.5 * h * j);
  return d;
}

// out = -i H psi with H = diag + sum_d v_d/2 sigma_d.
inline void apply_minus_i_h(const cplx *psi, cplx *out, size_t dim, const double *diag,
                            const std::vector<LocalDrive> &drives, int sample) {
  for (size_t i = 0; i < dim; ++i) out[i] = diag[i] * psi[i];
  for (const auto &d : drives) {
    const double half = 0.5 * d.v[sample];
    const size_t m = size_t(1) << d.bit;
    switch (d.axis) {
      case Axis::X:
        for (size_t i = 0; i < dim; ++i) out[i] += half * psi[i ^ m];
        break;
      case Axis::Y:
        for (size_t i = 0; i < dim; ++i) out[i] += (i & m ? cplx(0, half) : cplx(0, -half)) * psi[i ^ m];
        break;
      case Axis::Z:
        for (size_t i = 0; i < dim; ++i) out[i] += (i & m ? -half : half) * psi[i];
        break;
    }
  }
  for (size_t i = 0; i < dim; ++i) out[i] = cplx(out[i].imag(), -out[i].real());
}

void rk4_column(cplx *psi, size_t dim, const double *diag, const std::vector<LocalDrive> &drives, int nsteps,
                double h) {
  std::vector<cplx> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  for (int s = 0; s < nsteps; ++s) {
    apply_minus_i_h(psi, k1.data(), dim, diag, drives, 2 * s);
    for (size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
    apply_minus_i_h(tmp.data(), k2.data(), dim, diag, drives, 2 * s + 1);
    for (size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
    apply_minus_i_h(tmp.data(), k3.data(), dim, diag, drives, 2 * s + 1);
    for (size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + h * k3[i];
    apply_minus_i_h(tmp.data(), k4.data(), dim, diag, drives, 2 * s + 2);
    for (size_t i = 0; i < dim; ++i) psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

// Integrates every column of x (column-major, so columns are contiguous).
void rk4_matrix(Mat &x, const std::vector<double> &diag, const std::vector<LocalDrive> &drives, int nsteps,
                double h, bool parallel) {
  const size_t dim = size_t(x.rows());
  const int cols = int(x.cols());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < cols; ++c) rk4_column(x.col(c).data(), dim, diag.data(), drives, nsteps, h);
  } else {
    for (int c = 0; c < cols; ++c) rk4_column(x.col(c).data(), dim, diag.data(), drives, nsteps, h);
  }
}

void apply_single_qubit_rows(Mat &u, const Mat2 &r, int q, int n) {
  const Eigen::Index m = Eigen::Index(1) << qubit_bit(q, n);
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (i & m) continue;
    Eigen::RowVectorXcd a = u.row(i), b = u.row(i | m);
    u.row(i) = r(0, 0) * a + r(0, 1) * b;
    u.row(i | m) = r(1, 0) * a + r(1, 1) * b;
  }
}

void apply_hard(Mat &u, const Schedule &s, const std::vector<int> &idx) {
  for (int i : idx) {
    const auto &seg = s.segments[i];
    apply_single_qubit_rows(u, rotation(seg.shape.axis, seg.hard_angle), seg.qubit, s.n);
  }
}

void dense_window(Mat &u, const Schedule &s, const Window &w, const std::vector<double> &diag, bool parallel) {
  const int n = s.n;
  const double h = (w.t1 - w.t0) / w.nsteps;
  std::vector<LocalDrive> drives;
  for (int q = 0; q < n; ++q)
    if (w.active[q] >= 0) drives.push_back(sample_drive(s.segments[w.active[q]], qubit_bit(q, n), w.t0, h, w.nsteps));
  rk4_matrix(u, diag, drives, w.nsteps, h, parallel);
}

class FactorizedKernel {
 public:
  FactorizedKernel(const Schedule &s, const QubitGraph &g, const std::vector<double> &deltas)
      : s_(s), g_(g), deltas_(deltas), nb_(g.neighbors()) {}

  void window(Mat &u, const Window &w) {
    const int n = s_.n;
    std::vector<int> driven, idle;
    for (int q = 0; q < n; ++q) (w.active[q] >= 0 ? driven : idle).push_back(q);
    const double h = (w.t1 - w.t0) / w.nsteps;
    const int nd = int(driven.size()), nu = int(idle.size());

    // Driven clusters: connected components of the graph restricted to driven qubits.
    std::vector<int> comp_of(n, -1);
    std::vector<std::vector<int>> comps;
    for (int q : driven) {
      if (comp_of[q] >= 0) continue;
      std::vector<int> stack{q}, members;
      comp_of[q] = int(comps.size());
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (auto [nbq, J] : nb_[v])
          if (w.active[nbq] >= 0 && comp_of[nbq] < 0) {
            comp_of[nbq] = int(comps.size());
            stack.push_back(nbq);
          }
      }
      std::sort(members.begin(), members.end());
      comps.push_back(members);
    }

    // Position of each qubit inside the driven / idle registers (msb first).
    std::vector<int> dpos(n, -1), upos(n, -1);
    for (int a = 0; a < nd; ++a) dpos[driven[a]] = nd - 1 - a;
    for (int a = 0; a < nu; ++a) upos[idle[a]] = nu - 1 - a;

    std::vector<std::vector<int>> ext(comps.size());
    for (size_t c = 0; c < comps.size(); ++c) {
      for (int q : comps[c])
        for (auto [nbq, J] : nb_[q])
          if (w.active[nbq] < 0) ext[c].push_back(nbq);
      std::sort(ext[c].begin(), ext[c].end());
      ext[c].erase(std::unique(ext[c].begin(), ext[c].end()), ext[c].end());
    }

    const Eigen::Index ddim = Eigen::Index(1) << nd;
    const Eigen::Index udim = Eigen::Index(1) << nu;
    Mat out(u.rows(), u.cols());
    std::vector<Eigen::Index> rows(ddim);
    for (Eigen::Index us = 0; us < udim; ++us) {
      auto spin_u = [&](int q) { return (us >> upos[q]) & 1 ? -1 : 1; };
      double e = 0;
      for (const auto &ed : g_.edges)
        if (w.active[ed.i] < 0 && w.active[ed.j] < 0) e += 0.5 * ed.J * spin_u(ed.i) * spin_u(ed.j);
      for (int q : idle) e += 0.5 * deltas_[q] * spin_u(q);
      // For a fixed idle configuration this part of H is a scalar, so its phase is exact.
      const cplx phase = std::exp(cplx(0, -e * (w.t1 - w.t0)));

      std::vector<const Mat *> wc(comps.size());
      for (size_t c = 0; c < comps.size(); ++c) {
        std::uint64_t pattern = 0;
        for (size_t k = 0; k < ext[c].size(); ++k)
          if (spin_u(ext[c][k]) < 0) pattern |= std::uint64_t(1) << k;
        wc[c] = &cluster(w, comps[c], ext[c], pattern, h);
      }
      Mat k(ddim, ddim);
      for (Eigen::Index r = 0; r < ddim; ++r)
        for (Eigen::Index c = 0; c < ddim; ++c) {
          cplx val = phase;
          for (size_t ci = 0; ci < comps.size(); ++ci) {
            const auto &mem = comps[ci];
            const int m = int(mem.size());
            Eigen::Index rl = 0, cl = 0;
            for (int b = 0; b < m; ++b) {
              rl |= ((r >> dpos[mem[b]]) & 1) << (m - 1 - b);
              cl |= ((c >> dpos[mem[b]]) & 1) << (m - 1 - b);
            }
            val *= (*wc[ci])(rl, cl);
          }
          k(r, c) = val;
        }
      for (Eigen::Index d = 0; d < ddim; ++d) {
        Eigen::Index full = 0;
        for (int a = 0; a < nd; ++a)
          if ((d >> dpos[driven[a]]) & 1) full |= Eigen::Index(1) << qubit_bit(driven[a], n);
        for (int a = 0; a < nu; ++a)
          if ((us >> upos[idle[a]]) & 1) full |= Eigen::Index(1) << qubit_bit(idle[a], n);
        rows[d] = full;
      }
      Mat block(ddim, u.cols());
      for (Eigen::Index d = 0; d < ddim; ++d) block.row(d) = u.row(rows[d]);
      Mat res = k * block;
      for (Eigen::Index d = 0; d < ddim; ++d) out.row(rows[d]) = res.row(d);
    }
    u.swap(out);
  }

 private:
  const Mat &cluster(const Window &w, const std::vector<int> &mem, const std::vector<int> &ext,
                     std::uint64_t pattern, double h) {
    std::vector<double> key;
    for (int q : mem) {
      const auto &seg = s_.segments[w.active[q]];
      const auto &sh = seg.shape;
      key.insert(key.end(), {double(q), double(int(sh.axis)), double(sh.sign), sh.amplitude_scale, sh.duration,
                             double(int(sh.kind)), sh.phi0, w.t0 - seg.start, w.t1 - w.t0, double(w.nsteps),
                             double(sh.fourier_amps.size())});
      key.insert(key.end(), sh.fourier_amps.begin(), sh.fourier_amps.end());
    }
    key.push_back(double(pattern));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    const int m = int(mem.size());
    const size_t dim = size_t(1) << m;
    std::vector<double> field(m, 0.0);
    for (int b = 0; b < m; ++b) {
      const int q = mem[b];
      field[b] = deltas_[q];
      for (auto [nbq, J] : nb_[q]) {
        auto pos = std::find(ext.begin(), ext.end(), nbq);
        if (pos == ext.end()) continue;
        const int s = (pattern >> (pos - ext.begin())) & 1 ? -1 : 1;
        field[b] += J * s;
      }
    }
    std::vector<double> diag(dim, 0.0);
    for (size_t i = 0; i < dim; ++i) {
      auto sp = [&](int b) { return (i >> (m - 1 - b)) & 1 ? -1 : 1; };
      double e = 0;
      for (int b = 0; b < m; ++b) e += 0.5 * field[b] * sp(b);
      for (int b1 = 0; b1 < m; ++b1)
        for (int b2 = b1 + 1; b2 < m; ++b2)
          if (const Edge *ed = g_.edge(mem[b1], mem[b2])) e += 0.5 * ed->J * sp(b1) * sp(b2);
      diag[i] = e;
    }
    std::vector<LocalDrive> drives;
    for (int b = 0; b < m; ++b)
      drives.push_back(sample_drive(s_.segments[w.active[mem[b]]], m - 1 - b, w.t0, h, w.nsteps));
    Mat x = Mat::Identity(dim, dim);
    rk4_matrix(x, diag, drives, w.nsteps, h, false);
    return cache_.emplace(std::move(key), std::move(x)).first->second;
  }

  const Schedule &s_;
  const QubitGraph &g_;
  const std::vector<double> &deltas_;
  std::vector<std::vector<std::pair<int, double>>> nb_;
  std::map<std::vector<double>, Mat> cache_;
};

}  // namespace

UnitaryResult evolve(const Schedule &schedule, const QubitGraph &graph, const std::vector<double> &deltas,
                     const EvolveOptions &opt) {
  if (schedule.n != graph.n) throw ConfigError("schedule and graph qubit counts differ");
  if (int(deltas.size()) != graph.n) throw ConfigError("delta vector length must equal n");
  if (opt.steps_per_tau_p < 1) throw ConfigError("steps_per_tau_p must be positive");
  schedule.validate();
  const Timeline tl = build_timeline(schedule, opt.steps_per_tau_p);
  const int dim = 1 << schedule.n;
  Mat u = Mat::Identity(dim, dim);

  std::vector<double> diag;
  if (opt.kernel != Kernel::Factorized) diag = drift_diagonal(graph, deltas);
  FactorizedKernel fk(schedule, graph, deltas);

  for (size_t k = 0; k < tl.windows.size(); ++k) {
    apply_hard(u, schedule, tl.hard_at[k]);
    if (opt.kernel == Kernel::Factorized)
      fk.window(u, tl.windows[k]);
    else
      dense_window(u, schedule, tl.windows[k], diag, opt.kernel == Kernel::DenseParallel);
  }
  apply_hard(u, schedule, tl.hard_at.back());

  if (!u.allFinite()) throw NumericError("non-finite entries in propagator");
  UnitaryResult res;
  res.steps_per_tau_p = opt.steps_per_tau_p;
  res.unitarity_defect = opnorm(u.adjoint() * u - Mat::Identity(dim, dim));
  if (res.unitarity_defect > opt.defect_tolerance) {
    std::ostringstream os;
    os << "unitarity defect " << res.unitarity_defect << " exceeds " << opt.defect_tolerance
       << " (step size too coarse)";
    throw NumericError(os.str());
  }
  res.matrix = std::move(u);
  return res;
}

AverageHamiltonian extract_avg_hamiltonian(const Mat &r, double t, double branch_guard) {
  if (r.rows() != r.cols()) throw ConfigError("propagator must be square");
  if (!(t > 0)) throw ConfigError("averaging time must be positive");
  Eigen::ComplexSchur<Mat> schur(r);
  const Mat &tri = schur.matrixT();
  const Mat &q = schur.matrixU();
  const Eigen::Index dim = r.rows();
  Eigen::VectorXd lam(dim);
  double worst = 0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    double th = std::arg(tri(k, k));
    worst = std::max(worst, std::abs(th));
    lam[k] = -th / t;
  }
  AverageHamiltonian out;
  out.branch_margin = std::numbers::pi - worst;
  out.reliable = out.branch_margin > branch_guard;
  Mat h = q * lam.cast<cplx>().asDiagonal() * q.adjoint();
  out.h = 0.5 * (h + h.adjoint());
  return out;
}

Mat extract_avg_hamiltonian_strict(const Mat &r, double t, double branch_guard) {
  auto a = extract_avg_hamiltonian(r, t, branch_guard);
  if (!a.reliable) {
    std::ostringstream os;
    os << "eigenphase within " << a.branch_margin << " of the branch cut";
    throw NumericError(os.str());
  }
  return a.h;
}

namespace {

Mat spin_string(int n, const std::vector<std::pair<int, Axis>> &paulis, const std::vector<Mat2> *frame) {
  Mat out = Mat::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    Mat2 op = Mat2::Identity();
    for (auto [qq, ax] : paulis)
      if (qq == q) op = op * pauli(ax);
    if (frame) op = (*frame)[q].adjoint() * op * (*frame)[q];
    out = kron(out, Mat(op));
  }
  return out;
}

}  // namespace

Mat OpenSystem::matrix() const {
  const int dim = bath_dim << n_spins;
  Mat h = Mat::Zero(dim, dim);
  for (const auto &t : terms) h += t.coef * kron(t.bath, spin_string(n_spins, t.paulis, nullptr));
  return h;
}

Mat magnus6_exponent(const Mat &a1, const Mat &a2, const Mat &a3) {
  const double r15 = std::sqrt(15.0);
  Mat al1 = a2;
  Mat al2 = (r15 / 3.0) * (a3 - a1);
  Mat al3 = (10.0 / 3.0) * (a3 - 2.0 * a2 + a1);
  Mat c1 = comm(al1, al2);
  Mat c2 = (-1.0 / 60.0) * comm(al1, 2.0 * al3 + c1);
  return al1 + al3 / 12.0 + (1.0 / 240.0) * comm(-20.0 * al1 - al3 + c1, al2 + c2);
}

Mat evolve_toggling(const Schedule &schedule, const OpenSystem &system, double tau_p, int steps_per_tau_p) {
  if (schedule.n != system.n_spins) throw ConfigError("schedule and system spin counts differ");
  for (const auto &t : system.terms)
    if (t.bath.rows() != system.bath_dim || t.bath.cols() != system.bath_dim)
      throw ConfigError("bath operator dimension mismatch");
  schedule.validate();
  const int n = schedule.n;
  const Timeline tl = build_timeline(schedule, steps_per_tau_p);
  const int dim = system.bath_dim << n;
  Mat r = Mat::Identity(dim, dim);
  std::vector<Mat2> acc(n, Mat2::Identity());
  const double r15 = std::sqrt(15.0);
  const double nodes[3] = {0.5 - r15 / 10, 0.5, 0.5 + r15 / 10};

  auto htilde = [&](const Window &w, double t) {
    std::vector<Mat2> frame(n);
    for (int q = 0; q < n; ++q) {
      frame[q] = acc[q];
      if (w.active[q] >= 0) {
        const auto &seg = schedule.segments[w.active[q]];
        frame[q] = rotation(seg.shape.axis, seg.shape.phase(t - seg.start)) * acc[q];
      }
    }
    Mat h = Mat::Zero(dim, dim);
    for (const auto &term : system.terms) h += term.coef * kron(term.bath, spin_string(n, term.paulis, &frame));
    return h;
  };

  auto hard = [&](const std::vector<int> &idx) {
    for (int i : idx) {
      const auto &seg = schedule.segments[i];
      acc[seg.qubit] = rotation(seg.shape.axis, seg.hard_angle) * acc[seg.qubit];
    }
  };

  for (size_t k = 0; k < tl.windows.size(); ++k) {
    hard(tl.hard_at[k]);
    const Window &w = tl.windows[k];
    const double h = (w.t1 - w.t0) / w.nsteps;
    const cplx scale(0, -tau_p * h);
    for (int s = 0; s < w.nsteps; ++s) {
      const double ts = w.t0 + s * h;
      Mat a1 = scale * htilde(w, ts + nodes[0] * h);
      Mat a2 = scale * htilde(w, ts + nodes[1] * h);
      Mat a3 = scale * htilde(w, ts + nodes[2] * h);
      r = expm_small(magnus6_exponent(a1, a2, a3)) * r;
    }
    for (int q = 0; q < n; ++q) {
      if (w.active[q] < 0) continue;
      const auto &seg = schedule.segments[w.active[q]];
      if (std::abs(seg.end() - w.t1) <= kMergeEps) acc[q] = rotation(seg.shape.axis, seg.shape.net_angle()) * acc[q];
    }
  }
  hard(tl.hard_at.back());
  return r;
}

}  // namespace isingdd
