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

#include "isingdd/sequences.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

namespace isingdd {

namespace {

constexpr double kPi = std::numbers::pi;

void check_qubit(const QubitGraph &g, int q) {
  if (q < 0 || q >= g.n) throw ConfigError("qubit " + std::to_string(q) + " out of range");
}

void check_targets(const QubitGraph &g, const std::vector<int> &targets) {
  if (targets.empty()) throw ConfigError("no target qubits");
  std::set<int> seen;
  for (int t : targets) {
    check_qubit(g, t);
    if (!seen.insert(t).second) throw ConfigError("duplicate target qubit");
  }
  for (size_t a = 0; a < targets.size(); ++a)
    for (size_t b = a + 1; b < targets.size(); ++b)
      if (g.adjacent(targets[a], targets[b]))
        throw ConfigError("targets " + std::to_string(targets[a]) + " and " + std::to_string(targets[b]) +
                          " are adjacent");
}

Segment soft(int q, const PulseShape &shape, double start) {
  Segment s;
  s.qubit = q;
  s.shape = shape;
  s.start = start;
  return s;
}

}  // namespace

PulseFamily PulseFamily::standard(int order) {
  if (order < 0 || order > 2) throw ConfigError("pulse order must be 0, 1 or 2");
  PulseFamily f;
  f.order_ = order;
  f.name_ = order == 0 ? "hann" : "order" + std::to_string(order);
  f.store_ = std::make_shared<Store>();
  return f;
}

PulseFamily PulseFamily::explicit_shapes(const PulseShape &pi, const std::vector<PulseShape> &rotations) {
  PulseFamily f;
  f.fixed_ = true;
  f.order_ = -1;
  f.name_ = "explicit";
  f.store_ = std::make_shared<Store>();
  auto add = [&](PulseShape s) {
    s.validate();
    s.sign = 1;
    s.duration = 1;
    s.amplitude_scale = 1;
    f.store_->shapes[std::abs(s.net_angle())] = s;
  };
  add(pi);
  for (const auto &r : rotations) add(r);
  if (!f.store_->shapes.count(kPi)) {
    auto it = f.store_->shapes.lower_bound(kPi - 1e-12);
    if (it == f.store_->shapes.end() || std::abs(it->first - kPi) > 1e-9)
      throw ConfigError("explicit pulse set needs a pi pulse");
  }
  return f;
}

int PulseFamily::default_harmonics(int order) { return order == 1 ? 3 : 4; }

const PulseShape &PulseFamily::pi() const {
  thread_local PulseShape cached;
  cached = rotation(Axis::X, kPi);
  return cached;
}

PulseShape PulseFamily::rotation(Axis axis, double angle) const {
  if (!store_) throw ConfigError("empty pulse family");
  const double mag = std::abs(angle);
  if (!(mag > 0)) throw ConfigError("rotation angle must be nonzero");
  PulseShape base;
  {
    std::lock_guard<std::mutex> lock(store_->mu);
    auto it = store_->shapes.lower_bound(mag - 1e-12);
    if (it != store_->shapes.end() && std::abs(it->first - mag) <= 1e-9) {
      base = it->second;
    } else if (fixed_) {
      std::ostringstream os;
      os << "explicit pulse set has no shape for angle " << mag;
      throw ConfigError(os.str());
    } else {
      base = order_ == 0 ? hann_pulse(Axis::X, mag) : find_self_refocusing(order_, mag, default_harmonics(order_));
      store_->shapes[mag] = base;
    }
  }
  base.axis = axis;
  if (angle < 0) base = base.inverted();
  return base;
}

Mat ideal_rotation(int n, const std::vector<int> &targets, Axis axis, double angle) {
  Mat u = Mat::Identity(1 << n, 1 << n);
  for (int t : targets) u = embed1(rotation(axis, angle), t, n) * u;
  return u;
}

Mat ideal_zz(int n, const std::vector<std::pair<int, int>> &pairs, double theta) {
  const int dim = 1 << n;
  Mat u = Mat::Identity(dim, dim);
  for (int k = 0; k < dim; ++k) {
    double ph = 0;
    for (auto [a, b] : pairs) {
      int sa = (k >> qubit_bit(a, n)) & 1 ? -1 : 1;
      int sb = (k >> qubit_bit(b, n)) & 1 ? -1 : 1;
      ph += theta * sa * sb;
    }
    u(k, k) = std::exp(cplx(0, -ph));
  }
  return u;
}

Schedule dcg_single(Axis axis, double phi0, const std::vector<int> &targets, const QubitGraph &graph,
                    const PulseFamily &shapes) {
  check_targets(graph, targets);
  Schedule s = Schedule::empty(graph.n);
  s.total_duration = 16;
  s.label = "dcg";
  const PulseShape pix = shapes.pi();
  for (int q = 0; q < graph.n; ++q) {
    const auto &train = graph.sublattice[q] == 0 ? kDcgTrainA : kDcgTrainB;
    for (int k : train) s.segments.push_back(soft(q, pix, k - 1));
  }
  const PulseShape v = shapes.rotation(axis, phi0);
  for (int t : targets) {
    for (int k : kDcgPlus) s.segments.push_back(soft(t, v, k - 1));
    for (int k : kDcgMinus) s.segments.push_back(soft(t, v.inverted(), k - 1));
    s.segments.push_back(soft(t, v.stretched(), kDcgStretchedStart - 1));
  }
  s.ideal = ideal_rotation(graph.n, targets, axis, phi0);
  s.validate();
  return s;
}

Schedule dcg_symmetrized(Axis axis, double phi0, const std::vector<int> &targets, const QubitGraph &graph,
                         const PulseFamily &shapes) {
  Schedule direct = dcg_single(axis, phi0, targets, graph, shapes);
  Schedule rev = Schedule::empty(graph.n);
  rev.total_duration = direct.total_duration;
  for (Segment seg : direct.segments) {
    seg.start = direct.total_duration - seg.end();
    rev.segments.push_back(seg);
  }
  rev.ideal = direct.ideal;
  rev.append(direct);
  rev.label = "dcg-symmetrized";
  rev.validate();
  return rev;
}

double zz_prefactor(double tau1, double tau2) { return (tau1 + tau2) / (2 * tau1); }

Schedule zz_sequence(const std::vector<std::pair<int, int>> &pairs, const ZzOptions &opt, const QubitGraph &graph,
                     const PulseFamily &shapes, double *f_out) {
  if (opt.n_rep < 1) throw ConfigError("N_rep must be positive");
  if (!(opt.tau1 > 0)) throw ConfigError("tau1 must be positive");
  const double slack = opt.hard ? opt.tau1 : opt.tau1 - 1.0;
  if (slack < -1e-12 || std::abs(opt.tau2) > slack + 1e-12) {
    std::ostringstream os;
    os << "|tau2| = " << std::abs(opt.tau2) << " exceeds tau1 - tau_p = " << slack;
    throw ConfigError(os.str());
  }
  const double block = 16 * opt.tau1;
  if (std::abs(block * opt.n_rep - std::round(block * opt.n_rep)) > 1e-9)
    throw ConfigError("ZZ sequence duration must be a multiple of tau_p");

  std::vector<int> role(graph.n, -1);  // 0 = A', 1 = B'
  std::set<int> used;
  for (auto [a, b] : pairs) {
    check_qubit(graph, a);
    check_qubit(graph, b);
    if (!graph.adjacent(a, b)) throw ConfigError("ZZ pair is not an edge of the graph");
    if (!used.insert(a).second || !used.insert(b).second) throw ConfigError("ZZ pairs share a qubit");
    role[a] = graph.sublattice[a];
    role[b] = graph.sublattice[b];
  }
  for (size_t p = 0; p < pairs.size(); ++p)
    for (size_t r = p + 1; r < pairs.size(); ++r)
      for (int x : {pairs[p].first, pairs[p].second})
        for (int y : {pairs[r].first, pairs[r].second})
          if (graph.adjacent(x, y)) throw ConfigError("qubits from different ZZ pairs are directly connected");

  // Pulse centers in units of tau1; second half mirrors the first.
  auto mirrored = [](std::vector<double> c) {
    const size_t m = c.size();
    for (size_t i = 0; i < m; ++i) c.push_back(16 - c[i]);
    return c;
  };
  const double delta = 1 - opt.tau2 / opt.tau1;
  const auto ca = mirrored({0.5, 2.5, 4.5, 6.5});
  const auto cb = mirrored({1.5, 3.5, 5.5, 7.5});
  const auto cap = mirrored({2.5, 6.5});
  const auto cbp = mirrored({2.5 - delta, 6.5 - delta});

  Schedule s = Schedule::empty(graph.n);
  s.label = "zz";
  s.total_duration = block * opt.n_rep;
  const PulseShape pix = shapes.pi();
  for (int rep = 0; rep < opt.n_rep; ++rep) {
    const double t0 = rep * block;
    for (int q = 0; q < graph.n; ++q) {
      const std::vector<double> *c;
      if (role[q] == 0)
        c = &cap;
      else if (role[q] == 1)
        c = &cbp;
      else
        c = graph.sublattice[q] == 0 ? &ca : &cb;
      for (double x : *c) {
        const double center = t0 + x * opt.tau1;
        if (opt.hard) {
          auto h = hard_pulse(Axis::X, kPi, {q}, center);
          s.segments.push_back(h[0]);
        } else {
          s.segments.push_back(soft(q, pix, center - 0.5));
        }
      }
    }
  }
  const double f = zz_prefactor(opt.tau1, opt.tau2);
  if (f_out) *f_out = f;
  Mat ideal = Mat::Identity(1 << graph.n, 1 << graph.n);
  for (auto [a, b] : pairs) ideal = ideal_zz(graph.n, {{a, b}}, f * 0.5 * graph.edge(a, b)->J * s.total_duration) * ideal;
  s.ideal = ideal;
  s.validate();
  return s;
}

std::vector<std::string> eulerian_slots(EulerVariant variant) {
  if (variant == EulerVariant::Full) return {"y", "I", "x", "I", "y", "I", "x", "y", "x", "y", "x", "V"};
  return {"x", "I", "x", "x", "x", "V"};
}

Schedule eulerian_dcg(EulerVariant variant, double phi0, const PulseFamily &shapes) {
  Schedule s = Schedule::empty(1);
  s.label = variant == EulerVariant::Full ? "euler-full" : "euler-partial";
  const PulseShape v = shapes.rotation(Axis::Y, phi0);
  double t = 0;
  for (const auto &slot : eulerian_slots(variant)) {
    if (slot == "x" || slot == "y") {
      s.segments.push_back(soft(0, shapes.pi().along(slot == "x" ? Axis::X : Axis::Y), t));
      t += 1;
    } else if (slot == "I") {
      for (auto &seg : make_identity_pair(v, 0, t)) s.segments.push_back(seg);
      t += 2;
    } else {
      s.segments.push_back(soft(0, v.stretched(), t));
      t += 2;
    }
  }
  s.total_duration = t;
  s.ideal = Mat::Identity(2, 2);
  s.ideal = s.nominal_unitary();
  s.validate();
  return s;
}

GateKind gate_kind_from_string(const std::string &k) {
  if (k == "rotation") return GateKind::Rotation;
  if (k == "hadamard") return GateKind::Hadamard;
  if (k == "cnot") return GateKind::Cnot;
  if (k == "cy") return GateKind::Cy;
  if (k == "cz") return GateKind::Cz;
  if (k == "swap") return GateKind::Swap;
  if (k == "zz") return GateKind::Zz;
  throw ConfigError("unknown gate kind '" + k + "'");
}

std::string gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Rotation:
      return "rotation";
    case GateKind::Hadamard:
      return "hadamard";
    case GateKind::Cnot:
      return "cnot";
    case GateKind::Cy:
      return "cy";
    case GateKind::Cz:
      return "cz";
    case GateKind::Swap:
      return "swap";
    case GateKind::Zz:
      return "zz";
  }
  return "?";
}

double design_coupling(int n_rep) { return kPi / (16.0 * n_rep); }

std::pair<int, int> default_cnot_pair(const QubitGraph &graph) {
  // The target carries the X/Y rotations: the hub on a star, the end qubit on a chain.
  if (graph.kind == "star") return {1, 0};
  if (graph.kind == "chain") return {graph.n - 2, graph.n - 1};
  if (graph.edges.empty()) throw ConfigError("graph has no edges");
  return {graph.edges[0].i, graph.edges[0].j};
}

namespace {

std::vector<int> firsts(const std::vector<std::pair<int, int>> &p) {
  std::vector<int> out;
  for (auto [a, b] : p) out.push_back(a);
  return out;
}

std::vector<int> seconds(const std::vector<std::pair<int, int>> &p) {
  std::vector<int> out;
  for (auto [a, b] : p) out.push_back(b);
  return out;
}

Schedule zz_quarter(const std::vector<std::pair<int, int>> &pairs, int n_rep, const QubitGraph &g,
                    const PulseFamily &shapes) {
  for (auto [a, b] : pairs) {
    const Edge *e = g.edge(a, b);
    if (!e) throw ConfigError("two-qubit gate pair is not an edge");
    const double want = design_coupling(n_rep);
    if (std::abs(e->J - want) > 1e-9 * want)
      std::cerr << "warning: J tau_p = " << e->J << " differs from pi/(16 N_rep) = " << want
                << "; the ZZ rotation will not be pi/4\n";
  }
  ZzOptions o;
  o.n_rep = n_rep;
  Schedule s = zz_sequence(pairs, o, g, shapes);
  s.ideal = ideal_zz(g.n, pairs, kPi / 4);
  return s;
}

Schedule cnot_like(GateKind kind, const std::vector<std::pair<int, int>> &pairs, int n_rep, const QubitGraph &g,
                   const PulseFamily &shapes) {
  const auto ctrl = firsts(pairs), tgt = seconds(pairs);
  const double h = kPi / 2;
  Schedule s = Schedule::empty(g.n);
  cplx phase = 1;
  const double np = double(pairs.size());
  switch (kind) {
    case GateKind::Cnot:
      s.append(dcg_single(Axis::Y, h, tgt, g, shapes));
      s.append(zz_quarter(pairs, n_rep, g, shapes));
      s.append(dcg_single(Axis::Y, -h, tgt, g, shapes));
      s.append(dcg_single(Axis::X, h, tgt, g, shapes));
      s.append(dcg_single(Axis::Z, h, ctrl, g, shapes));
      phase = std::exp(cplx(0, np * kPi / 4));
      break;
    case GateKind::Cy:
      s.append(dcg_single(Axis::X, h, tgt, g, shapes));
      s.append(zz_quarter(pairs, n_rep, g, shapes));
      s.append(dcg_single(Axis::Z, -h, tgt, g, shapes));
      s.append(dcg_single(Axis::Z, -h, ctrl, g, shapes));
      s.append(dcg_single(Axis::X, -h, tgt, g, shapes));
      phase = std::exp(cplx(0, -np * kPi / 4));
      break;
    case GateKind::Cz:
      s.append(zz_quarter(pairs, n_rep, g, shapes));
      s.append(dcg_single(Axis::Z, -h, tgt, g, shapes));
      s.append(dcg_single(Axis::Z, -h, ctrl, g, shapes));
      phase = std::exp(cplx(0, -np * kPi / 4));
      break;
    default:
      throw ConfigError("not a controlled gate");
  }
  s.ideal *= phase;
  return s;
}

}  // namespace

Schedule compose_gate(const GateSpec &spec, const QubitGraph &graph, const PulseFamily &shapes) {
  Schedule s = Schedule::empty(graph.n);
  switch (spec.kind) {
    case GateKind::Rotation:
      s = dcg_single(spec.axis, spec.angle, spec.targets, graph, shapes);
      break;
    case GateKind::Hadamard: {
      s.append(dcg_single(Axis::X, -kPi, spec.targets, graph, shapes));
      s.append(dcg_single(Axis::Y, -kPi / 2, spec.targets, graph, shapes));
      s.ideal *= std::pow(cplx(0, -1), double(spec.targets.size()));
      break;
    }
    case GateKind::Cnot:
    case GateKind::Cy:
    case GateKind::Cz:
      if (spec.pairs.empty()) throw ConfigError("two-qubit gate needs at least one pair");
      s = cnot_like(spec.kind, spec.pairs, spec.n_rep, graph, shapes);
      break;
    case GateKind::Swap: {
      if (spec.pairs.empty()) throw ConfigError("swap needs at least one pair");
      std::vector<std::pair<int, int>> rev;
      for (auto [a, b] : spec.pairs) rev.push_back({b, a});
      s.append(cnot_like(GateKind::Cnot, spec.pairs, spec.n_rep, graph, shapes));
      s.append(cnot_like(GateKind::Cnot, rev, spec.n_rep, graph, shapes));
      s.append(cnot_like(GateKind::Cnot, spec.pairs, spec.n_rep, graph, shapes));
      break;
    }
    case GateKind::Zz: {
      if (spec.pairs.empty()) throw ConfigError("zz gate needs at least one pair");
      ZzOptions o;
      o.n_rep = spec.n_rep;
      s = zz_sequence(spec.pairs, o, graph, shapes);
      break;
    }
  }
  s.label = gate_kind_name(spec.kind);
  s.validate();
  return s;
}

}  // namespace isingdd
