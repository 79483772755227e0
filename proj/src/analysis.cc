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

#include "isingdd/analysis.h"

#include <cmath>
#include <exception>
#include <limits>
#include <ostream>

namespace isingdd {

namespace {

void check_square_pair(const Mat &a, const Mat &b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw ConfigError("fidelity: dimension mismatch");
}

int qubits_of(const Mat &v) {
  int n = 0;
  while ((Eigen::Index(1) << n) < v.rows()) ++n;
  if ((Eigen::Index(1) << n) != v.rows()) throw ConfigError("matrix dimension is not a power of two");
  return n;
}

}  // namespace

double fidelity(const Mat &ideal, const Mat &u) {
  check_square_pair(ideal, u);
  const double N = double(u.rows());
  const cplx tr = (ideal.adjoint() * u).trace();
  return (N + std::norm(tr)) / (N + N * N);
}

double infidelity(const Mat &ideal, const Mat &u) {
  check_square_pair(ideal, u);
  const double N = double(u.rows());
  const Mat v = ideal.adjoint() * u;
  const double fro2 = v.squaredNorm();
  // 1 - |Tr V|^2 / (N ||V||_F^2) is the non-identity Pauli weight.
  const double rest = 1 - std::norm(v.trace()) / (N * fro2);
  return N / (N + 1) * std::max(rest, 0.0);
}

WeightSpectrum pauli_weight_spectrum(const Mat &v) {
  const int n = qubits_of(v);
  if (n > kMaxSpectrumQubits) throw ConfigError("weight spectrum limited to 6 qubits");
  const size_t N = size_t(1) << n;
  WeightSpectrum ws;
  ws.n = n;
  ws.absolute.assign(n + 1, 0.0);
  ws.relative.assign(n + 1, 0.0);
  // Word digits per qubit: 0 = I, 1 = X, 2 = Y, 3 = Z.
  const size_t words = size_t(1) << (2 * n);
  for (size_t w = 0; w < words; ++w) {
    size_t xmask = 0;
    int weight = 0;
    int digits[kMaxSpectrumQubits];
    for (int q = 0; q < n; ++q) {
      const int d = int((w >> (2 * q)) & 3);
      digits[q] = d;
      if (d) ++weight;
      if (d == 1 || d == 2) xmask |= size_t(1) << qubit_bit(q, n);
    }
    // Tr(P^dagger V) = sum_c conj(P[r, c]) V[r, c] with r = c ^ xmask.
    cplx tr = 0;
    for (size_t c = 0; c < N; ++c) {
      const size_t r = c ^ xmask;
      cplx p = 1;
      for (int q = 0; q < n; ++q) {
        const int bc = int((c >> qubit_bit(q, n)) & 1);
        switch (digits[q]) {
          case 2:  // Y[r][c] = -i for (0,1), +i for (1,0)
            p *= bc ? cplx(0, -1) : cplx(0, 1);
            break;
          case 3:
            if (bc) p = -p;
            break;
          default:
            break;
        }
      }
      tr += std::conj(p) * v(Eigen::Index(r), Eigen::Index(c));
    }
    const double c2 = std::norm(tr / double(N));
    ws.absolute[weight] += c2;
    ws.total += c2;
  }
  ws.identity = ws.absolute[0];
  double err = 0;
  for (int w = 1; w <= n; ++w) err += ws.absolute[w];
  if (err > 0)
    for (int w = 1; w <= n; ++w) ws.relative[w] = ws.absolute[w] / err;
  return ws;
}

GateReport simulate_gate(const Schedule &schedule, const QubitGraph &graph, const std::vector<double> &deltas,
                         const EvolveOptions &opt, const GateMeta &meta) {
  GateReport r;
  r.meta = meta;
  r.n = graph.n;
  r.duration = schedule.total_duration;
  const UnitaryResult u = evolve(schedule, graph, deltas, opt);
  r.unitary = u.matrix;
  r.unitarity_defect = u.unitarity_defect;
  r.steps_per_tau_p = u.steps_per_tau_p;
  r.fidelity = fidelity(schedule.ideal, u.matrix);
  r.infidelity = infidelity(schedule.ideal, u.matrix);
  if (graph.n <= kMaxSpectrumQubits) {
    Mat v = schedule.ideal.adjoint() * u.matrix;
    r.spectrum = pauli_weight_spectrum(v);
    r.has_spectrum = true;
  }
  return r;
}

json report_to_json(const GateReport &r) {
  json j;
  j["gate"] = r.meta.gate;
  j["graph"] = r.meta.graph;
  j["pulse_order"] = r.meta.pulse_order;
  j["nrep"] = r.meta.n_rep;
  j["delta_rms"] = r.meta.delta_rms;
  j["seed"] = r.meta.seed;
  j["n"] = r.n;
  j["duration"] = r.duration;
  j["fidelity"] = r.fidelity;
  j["infidelity"] = r.infidelity;
  j["censored"] = r.infidelity < kInfidelityFloor;
  j["unitarity_defect"] = r.unitarity_defect;
  j["steps_per_tau_p"] = r.steps_per_tau_p;
  if (r.has_spectrum) {
    json ws = json::array();
    for (int w = 1; w <= r.n; ++w)
      ws.push_back({{"weight", w}, {"absolute", r.spectrum.absolute[w]}, {"relative", r.spectrum.relative[w]}});
    j["weight_spectrum"] = ws;
    j["weight_definition"] = "sum of |Tr(P^dagger V)/N|^2 over Pauli words P of the given weight";
  }
  return j;
}

std::vector<SweepRow> sweep(const Schedule &schedule, const QubitGraph &graph, const std::vector<double> &delta_grid,
                            const DisorderModel &disorder, const EvolveOptions &opt) {
  if (delta_grid.empty()) throw ConfigError("delta grid is empty");
  if (disorder.num_draws < 1) throw ConfigError("num_draws must be positive");
  for (double d : delta_grid)
    if (!(d >= 0)) throw ConfigError("delta grid values must be non-negative");

  const int P = int(delta_grid.size());
  const int M = disorder.num_draws;
  // A zero-width distribution gives one deterministic run per point.
  std::vector<int> draws(P);
  std::vector<size_t> offset(P + 1, 0);
  for (int p = 0; p < P; ++p) {
    draws[p] = delta_grid[p] == 0 ? 1 : M;
    offset[p + 1] = offset[p] + draws[p];
  }
  const long tasks = long(offset[P]);
  std::vector<double> inf(tasks, 0.0);
  std::exception_ptr err;

#pragma omp parallel for schedule(dynamic, 1)
  for (long t = 0; t < tasks; ++t) {
    if (err) continue;
    int p = 0;
    while (offset[p + 1] <= size_t(t)) ++p;
    const int m = int(t - long(offset[p]));
    try {
      DisorderModel d = disorder;
      d.delta_rms = delta_grid[p];
      const auto deltas = d.draw(m, graph.n);
      const UnitaryResult u = evolve(schedule, graph, deltas, opt);
      inf[t] = infidelity(schedule.ideal, u.matrix);
    } catch (...) {
#pragma omp critical(isingdd_sweep_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  std::vector<SweepRow> rows(P);
  std::vector<double> xs(P), ys(P);
  for (int p = 0; p < P; ++p) {
    double sum = 0;
    for (int m = 0; m < draws[p]; ++m) sum += inf[offset[p] + m];
    const double mean = sum / draws[p];
    double ss = 0;
    for (int m = 0; m < draws[p]; ++m) ss += (inf[offset[p] + m] - mean) * (inf[offset[p] + m] - mean);
    SweepRow &r = rows[p];
    r.delta_rms = delta_grid[p];
    r.mean_infidelity = mean;
    r.stderr_ = draws[p] > 1 ? std::sqrt(ss / (draws[p] - 1) / draws[p]) : 0.0;
    r.draws = draws[p];
    r.censored = mean < kInfidelityFloor;
    xs[p] = delta_grid[p];
    ys[p] = mean;
  }
  const auto sl = loglog_slope(xs, ys);
  for (int p = 0; p < P; ++p) rows[p].slope = sl[p];
  return rows;
}

std::vector<double> loglog_slope(const std::vector<double> &x, const std::vector<double> &y, double floor) {
  if (x.size() != y.size()) throw ConfigError("slope: length mismatch");
  const size_t n = x.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out(n, nan);
  auto ok = [&](size_t i) { return x[i] > 0 && y[i] > floor; };
  auto d = [&](size_t a, size_t b) { return (std::log(y[b]) - std::log(y[a])) / (std::log(x[b]) - std::log(x[a])); };
  if (n < 2) return out;
  for (size_t i = 0; i < n; ++i) {
    if (!ok(i)) continue;
    if (i > 0 && i + 1 < n) {
      if (ok(i - 1) && ok(i + 1)) out[i] = d(i - 1, i + 1);
    } else if (i == 0) {
      if (ok(1)) out[i] = d(0, 1);
    } else if (ok(i - 1)) {
      out[i] = d(i - 1, i);
    }
  }
  return out;
}

double loglog_fit(const std::vector<double> &x, const std::vector<double> &y, double floor) {
  if (x.size() != y.size()) throw ConfigError("fit: length mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > floor)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 2) throw NumericError("fit needs at least two points above the floor");
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows, const GateMeta &meta, int n) {
  CsvWriter w(os);
  w.header({"delta_rms", "mean_infidelity", "stderr", "slope", "n", "gate", "pulse_order", "nrep", "seed"});
  for (const auto &r : rows) {
    w.row({format_double(r.delta_rms), format_double(r.mean_infidelity), format_double(r.stderr_),
           std::isnan(r.slope) ? std::string() : format_double(r.slope), std::to_string(n), meta.gate,
           std::to_string(meta.pulse_order), std::to_string(meta.n_rep), std::to_string(meta.seed)});
  }
}

void write_weights_csv(std::ostream &os, const GateReport &r, bool header) {
  CsvWriter w(os);
  if (header) w.header({"n", "graph", "gate", "pulse_order", "delta_rms", "weight", "absolute", "relative", "infidelity"});
  if (!r.has_spectrum) return;
  for (int k = 1; k <= r.n; ++k)
    w.row({std::to_string(r.n), r.meta.graph, r.meta.gate, std::to_string(r.meta.pulse_order),
           format_double(r.meta.delta_rms), std::to_string(k), format_double(r.spectrum.absolute[k]),
           format_double(r.spectrum.relative[k]), format_double(r.infidelity)});
}

}  // namespace isingdd
