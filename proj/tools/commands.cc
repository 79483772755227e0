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

#include "commands.h"

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "isingdd/avgham.h"
#include "isingdd/scaling.h"
#include "isingdd/version.h"

namespace isingdd::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

void with_output(const std::string &path, const std::function<void(std::ostream &)> &fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  fn(os);
  if (!os) throw NumericError("write failed: " + path);
}

std::pair<int, int> parse_pair(const std::string &s) {
  const auto c = s.find(':');
  if (c == std::string::npos) throw ConfigError("pair '" + s + "' must look like control:target");
  try {
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
  } catch (const std::exception &) {
    throw ConfigError("pair '" + s + "' must look like control:target");
  }
}

json load_json(const std::string &path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void check_keys(const json &j, const char *where, std::initializer_list<const char *> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
}

template <class T>
T get_as(const json &j, const char *key, const char *where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw ConfigError(std::string(where) + "." + key + " is missing or has the wrong type");
  }
}

std::string graph_label(const QubitGraph &g) { return g.kind + std::to_string(g.n); }

GateMeta meta_for(const GateSpec &spec, const QubitGraph &g, int order, double delta, std::uint64_t seed) {
  GateMeta m;
  m.gate = gate_kind_name(spec.kind);
  m.graph = graph_label(g);
  m.pulse_order = order;
  m.n_rep = spec.n_rep;
  m.delta_rms = delta;
  m.seed = seed;
  return m;
}

GateSpec spec_for_graph(GateSpec spec, bool default_pairs, const QubitGraph &g) {
  const bool two_qubit = spec.kind != GateKind::Rotation && spec.kind != GateKind::Hadamard;
  if (two_qubit && default_pairs) spec.pairs = {default_cnot_pair(g)};
  if (!two_qubit && spec.targets.empty()) spec.targets = {0};
  return spec;
}

// Weight spectrum averaged over disorder draws; relative shares come from the
// averaged absolute contributions.
GateReport averaged_weights(const Schedule &s, const QubitGraph &g, const DisorderModel &d, const EvolveOptions &opt,
                            GateMeta meta) {
  const int draws = d.delta_rms == 0 ? 1 : d.num_draws;
  std::vector<WeightSpectrum> specs(draws);
  std::vector<double> inf(draws);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
  for (int m = 0; m < draws; ++m) {
    if (err) continue;
    try {
      const auto u = evolve(s, g, d.draw(m, g.n), opt);
      specs[m] = pauli_weight_spectrum(Mat(s.ideal.adjoint() * u.matrix));
      inf[m] = infidelity(s.ideal, u.matrix);
    } catch (...) {
#pragma omp critical(isingdd_weights_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  GateReport r;
  r.meta = meta;
  r.n = g.n;
  r.has_spectrum = true;
  r.spectrum.n = g.n;
  r.spectrum.absolute.assign(g.n + 1, 0.0);
  r.spectrum.relative.assign(g.n + 1, 0.0);
  for (int m = 0; m < draws; ++m) {
    for (int w = 0; w <= g.n; ++w) r.spectrum.absolute[w] += specs[m].absolute[w] / draws;
    r.infidelity += inf[m] / draws;
  }
  double err_w = 0;
  for (int w = 1; w <= g.n; ++w) err_w += r.spectrum.absolute[w];
  if (err_w > 0)
    for (int w = 1; w <= g.n; ++w) r.spectrum.relative[w] = r.spectrum.absolute[w] / err_w;
  return r;
}

// ---- shared gate flags ----

struct GateFlags {
  std::string gate = "cnot";
  std::string graph = "star6";
  int n_rep = 5;
  double J = std::numeric_limits<double>::quiet_NaN();
  std::string pulse = "order2";
  std::string pulse_file;
  std::vector<std::string> pairs;
  std::vector<int> targets;
  std::string axis = "x";
  double angle = kPi / 2;
  int steps = 1024;
  std::string kernel = "factorized";
  std::uint64_t seed = 0;
};

void add_gate_flags(CLI::App *sc, GateFlags &f) {
  sc->add_option("--gate", f.gate, "rotation, hadamard, cnot, cy, cz, swap or zz")->capture_default_str();
  sc->add_option("--graph", f.graph, "star<n> or chain<n>")->capture_default_str();
  sc->add_option("--nrep", f.n_rep, "ZZ repetitions per two-qubit rotation")->capture_default_str();
  sc->add_option("--coupling", f.J, "J in units of 1/tau_p (default pi/(16 nrep))");
  sc->add_option("--pulse", f.pulse, "order0 (hann), order1 or order2")->capture_default_str();
  sc->add_option("--pulse-file", f.pulse_file, "shape-set JSON replacing --pulse");
  sc->add_option("--pairs", f.pairs, "control:target pairs (default depends on the graph)")->delimiter(',');
  sc->add_option("--targets", f.targets, "single-qubit gate targets")->delimiter(',');
  sc->add_option("--axis", f.axis, "rotation axis")->capture_default_str();
  sc->add_option("--angle", f.angle, "rotation angle in radians")->capture_default_str();
  sc->add_option("--steps", f.steps, "RK4 steps per tau_p")->capture_default_str();
  sc->add_option("--kernel", f.kernel, "factorized, dense-serial or dense-parallel")->capture_default_str();
  sc->add_option("--seed", f.seed, "disorder seed")->capture_default_str();
}

struct GateSetup {
  QubitGraph graph;
  PulseChoice pulses;
  GateSpec spec;
  Schedule schedule;
  EvolveOptions opt;
};

GateSetup build_setup(const GateFlags &f) {
  if (f.n_rep < 1) throw ConfigError("--nrep must be positive");
  if (f.steps < 1) throw ConfigError("--steps must be positive");
  GateSetup s;
  const double J = std::isnan(f.J) ? design_coupling(f.n_rep) : f.J;
  s.graph = graph_from_name(f.graph, J);
  s.pulses = make_pulses(f.pulse, f.pulse_file);
  s.spec.kind = gate_kind_from_string(f.gate);
  s.spec.n_rep = f.n_rep;
  s.spec.axis = axis_from_string(f.axis);
  s.spec.angle = f.angle;
  s.spec.targets = f.targets;
  for (const auto &p : f.pairs) s.spec.pairs.push_back(parse_pair(p));
  s.spec = spec_for_graph(s.spec, f.pairs.empty(), s.graph);
  s.schedule = compose_gate(s.spec, s.graph, s.pulses.family);
  s.opt.steps_per_tau_p = f.steps;
  s.opt.kernel = kernel_from_string(f.kernel);
  return s;
}

// ---- subcommands ----

struct CoeffsFlags {
  std::string shape = "square";
  std::string pulse_file;
  double phi0 = kPi;
  int harmonics = 0;
  int points = 64;
  std::string output;
};

PulseShape named_shape(const std::string &kind, double phi0, int harmonics, bool zero_xi = false) {
  if (kind == "square") return square_pulse(Axis::X, phi0);
  if (kind == "hann" || kind == "order0") return hann_pulse(Axis::X, phi0);
  if (kind == "order1" || kind == "order2") {
    const int order = kind == "order1" ? 1 : 2;
    SelfRefocusingOptions o;
    o.zero_xi = zero_xi;
    const int h = harmonics > 0 ? harmonics : PulseFamily::default_harmonics(order) + (zero_xi ? 1 : 0);
    return find_self_refocusing(order, phi0, h, Axis::X, o);
  }
  throw ConfigError("unknown shape '" + kind + "' (square, hann, order1, order2)");
}

int cmd_coeffs(const CoeffsFlags &f) {
  if (f.points < 8) throw ConfigError("--points must be at least 8");
  const PulseShape s = f.pulse_file.empty() ? named_shape(f.shape, f.phi0, f.harmonics)
                                            : pulse_from_json(load_json(f.pulse_file));
  const PulseCoefficients c = compute_coefficients(s, f.points);
  with_output(f.output, [&](std::ostream &os) {
    CsvWriter w(os);
    w.header({"shape", "phi0", "upsilon", "beta", "xi", "delta1", "delta2", "delta3", "delta4", "delta5",
              "peak_amplitude"});
    w.row({f.pulse_file.empty() ? f.shape : "file", format_double(c.phi0), format_double(c.upsilon),
           format_double(c.beta), format_double(c.xi), format_double(c.delta1), format_double(c.delta2),
           format_double(c.delta3), format_double(c.delta4), format_double(c.delta5),
           format_double(s.peak_amplitude())});
  });
  return kExitOk;
}

struct FindFlags {
  int order = 2;
  double phi0 = kPi;
  int harmonics = 0;
  std::string axis = "x";
  bool zero_xi = false;
  bool set = false;
  int starts = 64;
  std::string output;
};

int cmd_find_pulse(const FindFlags &f) {
  if (f.order != 1 && f.order != 2) throw ConfigError("--order must be 1 or 2");
  SelfRefocusingOptions o;
  o.zero_xi = f.zero_xi;
  o.starts = f.starts;
  const int h = f.harmonics > 0 ? f.harmonics : PulseFamily::default_harmonics(f.order) + (f.zero_xi ? 1 : 0);
  const Axis axis = axis_from_string(f.axis);
  json out;
  auto report = [&](const PulseShape &s) {
    const auto c = compute_coefficients(s);
    std::cerr << "phi0 " << s.phi0 << " upsilon " << c.upsilon << " beta " << c.beta << " xi " << c.xi
              << " peak " << s.peak_amplitude() << "\n";
  };
  if (f.set) {
    const PulseShape pi = find_self_refocusing(f.order, kPi, h, Axis::X, o);
    const PulseShape half = find_self_refocusing(f.order, kPi / 2, h, Axis::X, o);
    report(pi);
    report(half);
    out["order"] = f.order;
    out["pi"] = pulse_to_json(pi);
    out["rotations"] = json::array({pulse_to_json(half)});
  } else {
    const PulseShape s = find_self_refocusing(f.order, f.phi0, h, axis, o);
    report(s);
    out = pulse_to_json(s);
  }
  with_output(f.output, [&](std::ostream &os) { os << out.dump(2) << "\n"; });
  return kExitOk;
}

struct SimulateFlags {
  GateFlags gate;
  double delta_rms = 0;
  int draw = 0;
  std::string output;
  std::string emit_schedule;
  std::string dump_unitary;
};

int cmd_simulate(const SimulateFlags &f) {
  if (f.delta_rms < 0) throw ConfigError("--delta-rms must be non-negative");
  if (f.draw < 0) throw ConfigError("--draw must be non-negative");
  GateSetup s = build_setup(f.gate);
  DisorderModel d;
  d.delta_rms = f.delta_rms;
  d.seed = f.gate.seed;
  const auto deltas = d.draw(f.draw, s.graph.n);
  const GateReport r = simulate_gate(s.schedule, s.graph, deltas, s.opt,
                                     meta_for(s.spec, s.graph, s.pulses.order, f.delta_rms, f.gate.seed));
  json j = report_to_json(r);
  j["deltas"] = deltas;
  j["tool_version"] = ISINGDD_VERSION;
  with_output(f.output, [&](std::ostream &os) { os << j.dump(2) << "\n"; });
  if (!f.emit_schedule.empty()) with_output(f.emit_schedule, [&](std::ostream &os) { s.schedule.write_csv(os); });
  if (!f.dump_unitary.empty()) write_unitary_binary(f.dump_unitary, r.unitary, r.n);
  return kExitOk;
}

struct SweepFlags {
  GateFlags gate;
  std::vector<double> grid;
  int draws = 50;
  std::vector<double> fit_window;
  std::string output;
};

int cmd_sweep(const SweepFlags &f) {
  if (f.grid.empty()) throw ConfigError("--delta-grid is empty");
  if (!f.fit_window.empty() && f.fit_window.size() != 2) throw ConfigError("--fit-window takes lo,hi");
  GateSetup s = build_setup(f.gate);
  DisorderModel d;
  d.seed = f.gate.seed;
  d.num_draws = f.draws;
  const auto rows = sweep(s.schedule, s.graph, f.grid, d, s.opt);
  with_output(f.output, [&](std::ostream &os) {
    write_sweep_csv(os, rows, meta_for(s.spec, s.graph, s.pulses.order, 0, f.gate.seed), s.graph.n);
  });
  if (f.fit_window.size() == 2)
    std::cerr << "fit_slope " << format_double(window_fit(rows, f.fit_window[0], f.fit_window[1])) << "\n";
  return kExitOk;
}

struct WeightsFlags {
  GateFlags gate;
  std::vector<double> deltas = {0.0};
  int draws = 50;
  std::string output;
};

int cmd_weights(const WeightsFlags &f) {
  if (f.deltas.empty()) throw ConfigError("--delta-rms list is empty");
  GateSetup s = build_setup(f.gate);
  if (s.graph.n > kMaxSpectrumQubits) throw ConfigError("weight spectrum limited to 6 qubits");
  with_output(f.output, [&](std::ostream &os) {
    bool header = true;
    for (double delta : f.deltas) {
      if (delta < 0) throw ConfigError("--delta-rms values must be non-negative");
      DisorderModel d;
      d.delta_rms = delta;
      d.seed = f.gate.seed;
      d.num_draws = f.draws;
      const auto r = averaged_weights(s.schedule, s.graph, d, s.opt,
                                      meta_for(s.spec, s.graph, s.pulses.order, delta, f.gate.seed));
      write_weights_csv(os, r, header);
      header = false;
    }
  });
  return kExitOk;
}

struct AvghamFlags {
  std::string target = "single";
  std::string shape = "auto";
  double phi0 = kPi;
  int bath_dim = 3;
  std::uint64_t seed = 1;
  int order = 2;
  std::vector<double> taus;
  int steps = 128;
  std::string output;
};

int cmd_avgham_check(const AvghamFlags &f) {
  if (f.bath_dim < 1) throw ConfigError("--bath-dim must be positive");
  std::vector<double> taus = f.taus;
  if (taus.empty())
    for (int k = 0; k <= 6; ++k) taus.push_back(std::pow(10.0, -3.0 + k / 3.0));
  for (double t : taus)
    if (!(t > 0)) throw ConfigError("--taus must be positive");

  std::function<Mat(double)> analytic, numeric;
  if (f.target == "single") {
    const PulseShape s = named_shape(f.shape == "auto" ? "square" : f.shape, f.phi0, 0);
    const PulseCoefficients c = compute_coefficients(s);
    const BathSpec bath = BathSpec::random(f.bath_dim, f.seed);
    const OpenSystem sys = bath_system({bath});
    const Schedule sched = single_pulse_schedule(s);
    analytic = [=](double tau) { return pulse_avg_ham(c, f.phi0, bath, tau, f.order); };
    numeric = [=](double tau) { return numeric_avg_ham(sched, sys, tau, f.steps); };
  } else {
    const DcgVariant v = dcg_variant_from_string(f.target);
    // Defaults satisfy the coefficient zeros each closed form assumes.
    std::string kind = f.shape;
    bool zero_xi = false;
    if (kind == "auto") {
      kind = v == DcgVariant::FullEuler ? "order1" : "order2";
      zero_xi = v == DcgVariant::Y3p;
    }
    const PulseShape pi = named_shape(kind, kPi, 0, zero_xi);
    const PulseShape rot = named_shape(kind, f.phi0, 0, zero_xi);
    const PulseCoefficients c = compute_coefficients(rot), c_pi = compute_coefficients(pi);
    const int spins = dcg_variant_spins(v);
    const int dim = spins == 1 ? f.bath_dim : std::min(f.bath_dim, 2);
    std::vector<BathSpec> baths;
    for (int i = 0; i < spins; ++i) baths.push_back(BathSpec::random(dim, f.seed + std::uint64_t(i)));
    const Schedule sched = dcg_variant_schedule(v, f.phi0, pi, rot);
    analytic = [=](double tau) { return dcg_avg_ham(v, c, c_pi, f.phi0, baths, tau, f.order); };
    numeric = [=](double tau) { return numeric_avg_ham_uncoupled(sched, baths, tau, f.steps); };
  }
  const auto pts = residual_scan(taus, analytic, numeric);
  with_output(f.output, [&](std::ostream &os) {
    CsvWriter w(os);
    w.header({"tau_p", "residual", "order"});
    for (const auto &p : pts) w.row({format_double(p.tau_p), format_double(p.residual), format_double(p.order)});
  });
  return kExitOk;
}

struct BoundsFlags {
  int z = 4;
  int K = 2;
  double mu = 10;
  double C = 1;
  double pc = 0.01;
  int n_rep = 5;
  int clusters = 10;
  std::string output;
  std::string clusters_output;
};

int cmd_bounds(const BoundsFlags &f) {
  const ToricBudget b = toric_budget(f.n_rep, f.pc, f.K, f.C, f.mu);
  with_output(f.output, [&](std::ostream &os) {
    CsvWriter w(os);
    w.header({"quantity", "value"});
    w.row({"z", std::to_string(f.z)});
    w.row({"K", std::to_string(f.K)});
    w.row({"mu", format_double(f.mu)});
    w.row({"C", format_double(f.C)});
    w.row({"p_c", format_double(f.pc)});
    if (f.z >= 3) w.row({"mu_max", format_double(mu_max(f.z))});
    w.row({"tau_cyc", format_double(b.tau_cyc)});
    w.row({"alpha_c", format_double(b.alpha_c)});
    w.row({"n_rep_c", format_double(b.n_rep_c)});
    w.row({"f_gate_at_alpha_c", format_double(b.f_gate_at_alpha_c)});
  });
  if (!f.clusters_output.empty()) {
    with_output(f.clusters_output, [&](std::ostream &os) {
      CsvWriter w(os);
      w.header({"s", "sites", "bonds", "mu_max_pow_s"});
      const double mu = f.z >= 3 ? mu_max(f.z) : std::numeric_limits<double>::quiet_NaN();
      for (int s = 1; s <= f.clusters; ++s)
        w.row({std::to_string(s), cluster_count_sites(f.z, s).str(), cluster_count_bonds(f.z, s).str(),
               format_double(std::pow(mu, s))});
    });
  }
  return kExitOk;
}

}  // namespace

// ---- shared pieces ----

PulseChoice make_pulses(const std::string &spec, const std::string &file) {
  PulseChoice p;
  if (!file.empty()) {
    const json j = load_json(file);
    check_keys(j, "pulse file", {"pi", "rotations", "order"});
    std::vector<PulseShape> rot;
    if (j.contains("rotations"))
      for (const auto &r : j.at("rotations")) rot.push_back(pulse_from_json(r));
    p.family = PulseFamily::explicit_shapes(pulse_from_json(j.at("pi")), rot);
    p.order = j.contains("order") ? j.at("order").get<int>() : -1;
    p.name = "explicit";
    return p;
  }
  if (spec == "order0" || spec == "hann") {
    p.order = 0;
  } else if (spec == "order1") {
    p.order = 1;
  } else if (spec == "order2") {
    p.order = 2;
  } else {
    throw ConfigError("unknown pulse '" + spec + "' (order0, order1, order2)");
  }
  p.name = "order" + std::to_string(p.order);
  p.family = PulseFamily::standard(p.order);
  return p;
}

QubitGraph graph_from_name(const std::string &name, double J) {
  size_t k = 0;
  while (k < name.size() && !std::isdigit(static_cast<unsigned char>(name[k]))) ++k;
  const std::string kind = name.substr(0, k);
  if ((kind != "star" && kind != "chain") || k == name.size())
    throw ConfigError("graph '" + name + "' must be star<n> or chain<n>");
  return build_graph(kind, std::stoi(name.substr(k)), J);
}

Kernel kernel_from_string(const std::string &s) {
  if (s == "factorized") return Kernel::Factorized;
  if (s == "dense-serial") return Kernel::DenseSerial;
  if (s == "dense-parallel") return Kernel::DenseParallel;
  throw ConfigError("unknown kernel '" + s + "'");
}

double window_fit(const std::vector<SweepRow> &rows, double lo, double hi) {
  // The delta = 0 point, when present, is the systematic floor; fit the excess over it.
  double floor = 0;
  for (const auto &r : rows)
    if (r.delta_rms == 0) floor = r.mean_infidelity;
  std::vector<double> x, y;
  for (const auto &r : rows)
    if (r.delta_rms > 0 && r.delta_rms >= lo && r.delta_rms <= hi && !r.censored) {
      x.push_back(r.delta_rms);
      y.push_back(r.mean_infidelity - floor);
    }
  return loglog_fit(x, y);
}

static std::pair<double, double> parse_window(const json &j, const std::string &where) {
  std::vector<double> w;
  try {
    w = j.get<std::vector<double>>();
  } catch (const json::exception &) {
    throw ConfigError(where + " must be [lo, hi]");
  }
  if (w.size() != 2 || !(w[0] < w[1])) throw ConfigError(where + " must be [lo, hi] with lo < hi");
  return {w[0], w[1]};
}

ExperimentConfig parse_config(const json &j, const std::string &base_dir) {
  check_keys(j, "config", {"name", "gate", "n_rep", "graphs", "pulses", "delta_grid", "disorder",
                           "steps_per_tau_p", "kernel", "fit_window", "weights_at", "output"});
  ExperimentConfig c;
  c.name = get_as<std::string>(j, "name", "config");
  c.gate.n_rep = j.contains("n_rep") ? get_as<int>(j, "n_rep", "config") : 5;
  if (c.gate.n_rep < 1) throw ConfigError("config.n_rep must be positive");

  const json &g = j.contains("gate") ? j.at("gate") : json::object();
  check_keys(g, "gate", {"kind", "pairs", "targets", "axis", "angle"});
  c.gate.kind = gate_kind_from_string(g.contains("kind") ? get_as<std::string>(g, "kind", "gate") : "cnot");
  if (g.contains("pairs")) {
    c.default_pairs = false;
    for (const auto &p : g.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw ConfigError("gate.pairs entries must be [control, target]");
      c.gate.pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
  }
  if (g.contains("targets")) c.gate.targets = get_as<std::vector<int>>(g, "targets", "gate");
  if (g.contains("axis")) c.gate.axis = axis_from_string(get_as<std::string>(g, "axis", "gate"));
  c.gate.angle = g.contains("angle") ? get_as<double>(g, "angle", "gate") : kPi / 2;

  if (!j.contains("graphs") || !j.at("graphs").is_array() || j.at("graphs").empty())
    throw ConfigError("config.graphs must be a non-empty array");
  for (json gj : j.at("graphs")) {
    check_keys(gj, "graph", {"kind", "n", "J", "edges", "labels"});
    if (!gj.contains("J")) gj["J"] = design_coupling(c.gate.n_rep);
    c.graphs.push_back(graph_from_json(gj));
  }

  if (!j.contains("pulses") || !j.at("pulses").is_array() || j.at("pulses").empty())
    throw ConfigError("config.pulses must be a non-empty array");
  for (const auto &pj : j.at("pulses")) {
    check_keys(pj, "pulse", {"order", "file", "fit_window"});
    if (pj.contains("file")) {
      fs::path p = get_as<std::string>(pj, "file", "pulse");
      if (p.is_relative()) p = fs::path(base_dir) / p;
      PulseChoice pc = make_pulses("", p.string());
      if (pj.contains("order")) pc.order = get_as<int>(pj, "order", "pulse");
      c.pulses.push_back(pc);
    } else {
      const int order = get_as<int>(pj, "order", "pulse");
      c.pulses.push_back(make_pulses("order" + std::to_string(order)));
    }
    if (pj.contains("fit_window")) {
      const auto w = parse_window(pj.at("fit_window"), "pulse.fit_window");
      c.pulses.back().has_fit_window = true;
      c.pulses.back().fit_lo = w.first;
      c.pulses.back().fit_hi = w.second;
    }
  }

  if (!j.contains("delta_grid") || !j.at("delta_grid").is_array())
    throw ConfigError("config.delta_grid must be an array");
  c.delta_grid = get_as<std::vector<double>>(j, "delta_grid", "config");
  if (c.delta_grid.empty()) throw ConfigError("config.delta_grid is empty");
  for (double d : c.delta_grid)
    if (!(d >= 0)) throw ConfigError("config.delta_grid values must be non-negative");

  const json &dj = j.contains("disorder") ? j.at("disorder") : json::object();
  check_keys(dj, "disorder", {"seed", "num_draws"});
  c.disorder.seed = dj.contains("seed") ? get_as<std::uint64_t>(dj, "seed", "disorder") : 0;
  c.disorder.num_draws = dj.contains("num_draws") ? get_as<int>(dj, "num_draws", "disorder") : 50;
  if (c.disorder.num_draws < 1) throw ConfigError("disorder.num_draws must be positive");

  c.evolve.steps_per_tau_p = j.contains("steps_per_tau_p") ? get_as<int>(j, "steps_per_tau_p", "config") : 1024;
  if (c.evolve.steps_per_tau_p < 1) throw ConfigError("config.steps_per_tau_p must be positive");
  if (j.contains("kernel")) c.evolve.kernel = kernel_from_string(get_as<std::string>(j, "kernel", "config"));

  if (j.contains("fit_window")) {
    const auto w = parse_window(j.at("fit_window"), "config.fit_window");
    c.has_fit_window = true;
    c.fit_lo = w.first;
    c.fit_hi = w.second;
  }
  if (j.contains("weights_at")) {
    c.weights_at = get_as<std::vector<double>>(j, "weights_at", "config");
    for (const auto &gr : c.graphs)
      if (gr.n > kMaxSpectrumQubits) throw ConfigError("weights_at needs graphs with at most 6 qubits");
  }

  const json &oj = j.contains("output") ? j.at("output") : json::object();
  check_keys(oj, "output", {"dir", "prefix"});
  c.output_dir = oj.contains("dir") ? get_as<std::string>(oj, "dir", "output") : "results/" + c.name;
  c.prefix = oj.contains("prefix") ? get_as<std::string>(oj, "prefix", "output") : c.name;
  return c;
}

json run_experiment(const ExperimentConfig &cfg, const json &config_json) {
  fs::create_directories(cfg.output_dir);
  json files = json::array();
  json fits = json::array();
  auto record = [&](const std::string &name) {
    const fs::path p = fs::path(cfg.output_dir) / name;
    files.push_back({{"path", name}, {"sha256", sha256_file(p.string())}, {"bytes", fs::file_size(p)}});
  };

  for (const auto &g : cfg.graphs) {
    const std::string label = graph_label(g);
    const GateSpec spec = spec_for_graph(cfg.gate, cfg.default_pairs, g);
    const std::string sweep_name = cfg.prefix + "_" + label + ".csv";
    {
      std::ofstream os(fs::path(cfg.output_dir) / sweep_name, std::ios::binary);
      if (!os) throw ConfigError("cannot write into " + cfg.output_dir);
      for (size_t k = 0; k < cfg.pulses.size(); ++k) {
        const auto &p = cfg.pulses[k];
        const Schedule s = compose_gate(spec, g, p.family);
        const auto rows = sweep(s, g, cfg.delta_grid, cfg.disorder, cfg.evolve);
        const GateMeta meta = meta_for(spec, g, p.order, 0, cfg.disorder.seed);
        if (k == 0) {
          write_sweep_csv(os, rows, meta, g.n);
        } else {
          // Later series share the header of the first.
          std::ostringstream tmp;
          write_sweep_csv(tmp, rows, meta, g.n);
          const std::string body = tmp.str();
          os << body.substr(body.find("\r\n") + 2);
        }
        json fit = {{"graph", label}, {"pulse_order", p.order}, {"pulse", p.name}};
        if (p.has_fit_window || cfg.has_fit_window) {
          const double lo = p.has_fit_window ? p.fit_lo : cfg.fit_lo;
          const double hi = p.has_fit_window ? p.fit_hi : cfg.fit_hi;
          try {
            fit["slope"] = window_fit(rows, lo, hi);
          } catch (const NumericError &) {
            fit["slope"] = nullptr;
          }
          fit["window"] = {lo, hi};
        }
        fits.push_back(fit);
      }
    }
    record(sweep_name);

    if (!cfg.weights_at.empty()) {
      const std::string wname = cfg.prefix + "_" + label + "_weights.csv";
      {
        std::ofstream os(fs::path(cfg.output_dir) / wname, std::ios::binary);
        bool header = true;
        for (const auto &p : cfg.pulses) {
          const Schedule s = compose_gate(spec, g, p.family);
          for (double delta : cfg.weights_at) {
            DisorderModel d = cfg.disorder;
            d.delta_rms = delta;
            write_weights_csv(os, averaged_weights(s, g, d, cfg.evolve, meta_for(spec, g, p.order, delta, d.seed)),
                              header);
            header = false;
          }
        }
      }
      record(wname);
    }
  }

  json m;
  m["tool"] = "isingdd";
  m["tool_version"] = ISINGDD_VERSION;
  m["config_sha256"] = sha256_hex(config_json.dump());
  m["config"] = config_json;
  m["files"] = files;
  m["fits"] = fits;
  std::ofstream os(fs::path(cfg.output_dir) / "manifest.json", std::ios::binary);
  os << m.dump(2) << "\n";
  return m;
}

int main_entry(int argc, char **argv) {
  CLI::App app{"Dynamically corrected gates on Ising qubit networks"};
  app.set_version_flag("--version", std::string(ISINGDD_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread cap (0 = runtime default)")
      ->envname("ISINGDD_THREADS")
      ->check(CLI::NonNegativeNumber);

  CoeffsFlags coeffs;
  auto *c = app.add_subcommand("coeffs", "Coefficient table of one pulse shape as CSV");
  c->add_option("--shape", coeffs.shape, "square, hann, order1 or order2")->capture_default_str();
  c->add_option("--pulse-file", coeffs.pulse_file, "single-shape JSON");
  c->add_option("--phi0", coeffs.phi0, "rotation angle")->capture_default_str();
  c->add_option("--harmonics", coeffs.harmonics, "Fourier harmonics for order1/order2 searches");
  c->add_option("--points", coeffs.points, "quadrature points per axis")->capture_default_str();
  c->add_option("--output", coeffs.output, "CSV path (default stdout)");

  FindFlags find;
  auto *fp = app.add_subcommand("find-pulse", "Search a self-refocusing shape; prints JSON");
  fp->add_option("--order", find.order, "1 or 2")->capture_default_str();
  fp->add_option("--phi0", find.phi0, "rotation angle")->capture_default_str();
  fp->add_option("--harmonics", find.harmonics, "Fourier harmonics (default 3 for order 1, 4 for order 2)");
  fp->add_option("--axis", find.axis, "pulse axis")->capture_default_str();
  fp->add_flag("--zero-xi", find.zero_xi, "also zero xi");
  fp->add_flag("--set", find.set, "emit a pi plus pi/2 shape set usable as --pulse-file");
  fp->add_option("--starts", find.starts, "multistart count")->capture_default_str();
  fp->add_option("--output", find.output, "JSON path (default stdout)");

  SimulateFlags sim;
  auto *sm = app.add_subcommand("simulate", "Simulate one gate; prints a GateReport JSON");
  add_gate_flags(sm, sim.gate);
  sm->add_option("--delta-rms", sim.delta_rms, "chemical-shift spread")->capture_default_str();
  sm->add_option("--draw", sim.draw, "disorder draw index")->capture_default_str();
  sm->add_option("--output", sim.output, "JSON path (default stdout)");
  sm->add_option("--emit-schedule", sim.emit_schedule, "segment table CSV");
  sm->add_option("--dump-unitary", sim.dump_unitary, "binary unitary dump");

  SweepFlags sw;
  auto *sp = app.add_subcommand("sweep", "Disorder-averaged infidelity over a delta grid as CSV");
  add_gate_flags(sp, sw.gate);
  sp->add_option("--delta-grid", sw.grid, "comma-separated delta_rms values")->delimiter(',')->required();
  sp->add_option("--draws", sw.draws, "disorder draws per point")->capture_default_str();
  sp->add_option("--fit-window", sw.fit_window, "lo,hi; prints the fitted slope on stderr")->delimiter(',');
  sp->add_option("--output", sw.output, "CSV path (default stdout)");

  WeightsFlags wt;
  auto *ws = app.add_subcommand("weights", "Pauli-weight error spectrum as CSV");
  add_gate_flags(ws, wt.gate);
  ws->add_option("--delta-rms", wt.deltas, "comma-separated delta_rms values")->delimiter(',');
  ws->add_option("--draws", wt.draws, "disorder draws per point")->capture_default_str();
  ws->add_option("--output", wt.output, "CSV path (default stdout)");

  AvghamFlags av;
  auto *ah = app.add_subcommand("avgham-check", "Closed-form vs numerical average Hamiltonian residuals");
  ah->add_option("--target", av.target, "single, full_euler, partial_euler, y3p or y3p_symmetrized")
      ->capture_default_str();
  ah->add_option("--shape", av.shape, "square, hann, order1, order2 or auto")->capture_default_str();
  ah->add_option("--phi0", av.phi0, "rotation angle")->capture_default_str();
  ah->add_option("--bath-dim", av.bath_dim, "bath dimension per spin")->capture_default_str();
  ah->add_option("--seed", av.seed, "bath seed")->capture_default_str();
  ah->add_option("--order", av.order, "closed-form order 0, 1 or 2")->capture_default_str();
  ah->add_option("--taus", av.taus, "comma-separated tau_p values")->delimiter(',');
  ah->add_option("--steps", av.steps, "Magnus steps per tau_p")->capture_default_str();
  ah->add_option("--output", av.output, "CSV path (default stdout)");

  BoundsFlags bd;
  auto *bo = app.add_subcommand("bounds", "Cluster and toric-cycle error budget");
  bo->add_option("--z", bd.z, "maximum degree")->capture_default_str();
  bo->add_option("--K", bd.K, "decoupling order")->capture_default_str();
  bo->add_option("--mu", bd.mu, "cluster growth exponent")->capture_default_str();
  bo->add_option("--C", bd.C, "cluster-count prefactor")->capture_default_str();
  bo->add_option("--pc", bd.pc, "target threshold")->capture_default_str();
  bo->add_option("--nrep", bd.n_rep, "N_rep for the cycle time")->capture_default_str();
  bo->add_option("--clusters", bd.clusters, "largest cluster size tabulated")->capture_default_str();
  bo->add_option("--output", bd.output, "CSV path (default stdout)");
  bo->add_option("--clusters-output", bd.clusters_output, "cluster-count CSV path");

  std::string config_path, out_dir;
  auto *rn = app.add_subcommand("run", "Run an experiment config; writes CSVs and manifest.json");
  rn->add_option("--config", config_path, "experiment JSON")->required();
  rn->add_option("--output-dir", out_dir, "override output.dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    if (c->parsed()) return cmd_coeffs(coeffs);
    if (fp->parsed()) return cmd_find_pulse(find);
    if (sm->parsed()) return cmd_simulate(sim);
    if (sp->parsed()) return cmd_sweep(sw);
    if (ws->parsed()) return cmd_weights(wt);
    if (ah->parsed()) return cmd_avgham_check(av);
    if (bo->parsed()) return cmd_bounds(bd);
    if (rn->parsed()) {
      const json j = load_json(config_path);
      ExperimentConfig cfg = parse_config(j, fs::path(config_path).parent_path().string());
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const json m = run_experiment(cfg, j);
      for (const auto &f : m["fits"])
        if (f.contains("slope")) std::cerr << f["graph"].get<std::string>() << " " << f["pulse"].get<std::string>()
                                           << " slope " << f["slope"].dump() << "\n";
      return kExitOk;
    }
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception &e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitSimulation;
  }
  return kExitConfig;
}

}  // namespace isingdd::cli
