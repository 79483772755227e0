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

#include "isingdd/pulse.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/legendre.hpp>

namespace isingdd {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double basis_phase(int k, double u) { return u - std::sin(kTwoPi * k * u) / (kTwoPi * k); }

}  // namespace

double PulseShape::base_amplitude(double u) const {
  if (kind == ShapeKind::Square) return phi0;
  double v = 0;
  for (size_t k = 0; k < fourier_amps.size(); ++k)
    v += fourier_amps[k] * (1 - std::cos(kTwoPi * double(k + 1) * u));
  return v;
}

double PulseShape::base_phase(double u) const {
  if (kind == ShapeKind::Square) return phi0 * u;
  double p = 0;
  for (size_t k = 0; k < fourier_amps.size(); ++k) p += fourier_amps[k] * basis_phase(int(k + 1), u);
  return p;
}

double PulseShape::amplitude(double t) const {
  return sign * amplitude_scale * base_amplitude(t / duration);
}

double PulseShape::phase(double t) const {
  return sign * amplitude_scale * duration * base_phase(t / duration);
}

double PulseShape::peak_amplitude() const {
  double peak = 0;
  const int samples = 4000;
  for (int i = 0; i <= samples; ++i) peak = std::max(peak, std::abs(base_amplitude(double(i) / samples)));
  return peak * amplitude_scale;
}

PulseShape PulseShape::stretched() const {
  PulseShape s = *this;
  s.duration = 2.0;
  s.amplitude_scale = 0.5;
  return s;
}

PulseShape PulseShape::inverted() const {
  PulseShape s = *this;
  s.sign = -sign;
  return s;
}

PulseShape PulseShape::along(Axis a) const {
  PulseShape s = *this;
  s.axis = a;
  return s;
}

void PulseShape::validate() const {
  if (!(duration > 0)) throw ConfigError("pulse duration must be positive");
  if (sign != 1 && sign != -1) throw ConfigError("pulse sign must be +1 or -1");
  if (!std::isfinite(amplitude_scale)) throw ConfigError("pulse amplitude_scale must be finite");
  if (kind == ShapeKind::Fourier) {
    if (fourier_amps.empty()) throw ConfigError("pulse needs at least one Fourier amplitude");
    double sum = 0, mag = std::abs(phi0);
    for (double a : fourier_amps) {
      if (!std::isfinite(a)) throw ConfigError("non-finite Fourier amplitude");
      sum += a;
      mag += std::abs(a);
    }
    // Rounding of the sum grows with the size of the individual amplitudes.
    if (std::abs(sum - phi0) > 1e-12 * std::max(1.0, mag)) {
      std::ostringstream os;
      os << "Fourier amplitudes sum to " << sum << " but phi0 = " << phi0;
      throw ConfigError(os.str());
    }
  }
}

PulseShape square_pulse(Axis axis, double phi0) {
  PulseShape s;
  s.axis = axis;
  s.phi0 = phi0;
  s.kind = ShapeKind::Square;
  return s;
}

PulseShape fourier_pulse(Axis axis, double phi0, std::vector<double> amps) {
  PulseShape s;
  s.axis = axis;
  s.phi0 = phi0;
  s.fourier_amps = std::move(amps);
  s.validate();
  return s;
}

PulseShape hann_pulse(Axis axis, double phi0) { return fourier_pulse(axis, phi0, {phi0}); }

double phase_profile(const PulseShape &shape, double t) {
  if (t < 0 || t > shape.duration) throw std::out_of_range("time outside pulse support");
  return shape.phase(t);
}

double symmetrized_phase(const PulseShape &shape, double t) {
  return phase_profile(shape, t) - shape.net_angle() / 2;
}

double PulseCoefficients::gamma(int j) const { return delta(j); }

double PulseCoefficients::delta(int j) const {
  switch (j) {
    case 1:
      return delta1;
    case 2:
      return delta2;
    case 3:
      return delta3;
    case 4:
      return delta4;
    case 5:
      return delta5;
  }
  throw std::out_of_range("delta index");
}

void gauss_legendre_01(int n, std::vector<double> &x, std::vector<double> &w) {
  static std::mutex mu;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> xs, ws;
    for (double z : zeros) {
      double dp = boost::math::legendre_p_prime<double>(n, z);
      double wt = 2.0 / ((1 - z * z) * dp * dp);
      if (z == 0.0) {
        xs.push_back(0.5);
        ws.push_back(wt / 2);
      } else {
        xs.push_back(0.5 - z / 2);
        ws.push_back(wt / 2);
        xs.push_back(0.5 + z / 2);
        ws.push_back(wt / 2);
      }
    }
    std::vector<size_t> idx(xs.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    std::vector<double> sx, sw;
    for (size_t i : idx) {
      sx.push_back(xs[i]);
      sw.push_back(ws[i]);
    }
    it = cache.emplace(n, std::make_pair(sx, sw)).first;
  }
  x = it->second.first;
  w = it->second.second;
}

PulseCoefficients compute_coefficients(const PulseShape &shape, int points) {
  shape.validate();
  for (double u : {0.1, 0.23, 0.37, 0.49}) {
    if (std::abs(shape.base_amplitude(u) - shape.base_amplitude(1 - u)) >
        1e-12 * std::max(1.0, std::abs(shape.base_amplitude(u))))
      throw ConfigError("coefficient integrals need a symmetric pulse");
  }
  std::vector<double> x, w;
  gauss_legendre_01(points, x, w);
  const double half = shape.base_phase(1.0) / 2;
  auto vphi = [&](double u) { return shape.base_phase(u) - half; };

  PulseCoefficients c;
  c.phi0 = shape.base_phase(1.0);
  const int n = points;
  std::vector<double> ph(n);
  for (int i = 0; i < n; ++i) ph[i] = vphi(x[i]);
  for (int i = 0; i < n; ++i) {
    c.upsilon += w[i] * std::cos(ph[i]);
    c.xi += w[i] * (x[i] - 0.5) * std::sin(ph[i]);
  }
  double b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b += w[i] * w[j] * x[i] * std::sin(ph[i] - vphi(x[i] * x[j]));
  c.beta = b / 2;

  // t3 = X3, t2 = X3 X2, t1 = t2 X1, Jacobian X3 t2.
  double ce = 0, sse = 0, cce = 0, ssc = 0, scc = 0;
  for (int i = 0; i < n; ++i) {
    const double t3 = x[i];
    const double c3 = std::cos(ph[i]), s3 = std::sin(ph[i]);
    for (int j = 0; j < n; ++j) {
      const double t2 = t3 * x[j];
      const double p2 = vphi(t2);
      const double c2 = std::cos(p2), s2 = std::sin(p2);
      double e1 = 0, c1 = 0;
      for (int k = 0; k < n; ++k) {
        const double p1 = vphi(t2 * x[k]);
        e1 += w[k];
        c1 += w[k] * std::cos(p1);
      }
      const double jw = w[i] * w[j] * t3 * t2;
      ce += jw * c3 * e1;
      sse += jw * s3 * s2 * e1;
      cce += jw * c3 * c2 * e1;
      ssc += jw * s3 * s2 * c1;
      scc += jw * s3 * c2 * c1;
    }
  }
  c.delta1 = ce - c.upsilon / 8;
  c.delta2 = sse;
  c.delta3 = cce;
  c.delta4 = ssc;
  c.delta5 = scc;
  return c;
}

namespace {

// upsilon and beta with gradients with respect to a_2..a_M, where
// a_1 = phi0 - sum_{k>=2} a_k.
class RefocusingSystem {
 public:
  RefocusingSystem(double phi0, int m) : phi0_(phi0), m_(m) {
    gauss_legendre_01(64, x_, w_);
    const int n = int(x_.size());
    b1_.resize(n * m);
    b2_.resize(n * n * m);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < m; ++k) b1_[i * m + k] = basis_phase(k + 1, x_[i]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < m; ++k) b2_[(i * n + j) * m + k] = basis_phase(k + 1, x_[i] * x_[j]);
  }

  std::vector<double> amps(const Eigen::VectorXd &f) const {
    std::vector<double> a(m_);
    a[0] = phi0_ - f.sum();
    for (int k = 1; k < m_; ++k) a[k] = f[k - 1];
    return a;
  }

  // Returns constraint values (rows) and Jacobian.
  // Rows: upsilon, then beta (order 2), then xi when requested.
  void eval(const Eigen::VectorXd &f, int order, bool zero_xi, Eigen::VectorXd &g, Eigen::MatrixXd &jac) const {
    const int n = int(x_.size());
    const auto a = amps(f);
    const int rows = order + (zero_xi ? 1 : 0);
    g.setZero(rows);
    jac.setZero(rows, m_ - 1);
    std::vector<double> ph(n);
    for (int i = 0; i < n; ++i) {
      double p = -phi0_ / 2;
      for (int k = 0; k < m_; ++k) p += a[k] * b1_[i * m_ + k];
      ph[i] = p;
      g[0] += w_[i] * std::cos(p);
      for (int k = 1; k < m_; ++k)
        jac(0, k - 1) -= w_[i] * std::sin(p) * (b1_[i * m_ + k] - b1_[i * m_]);
    }
    if (zero_xi) {
      const int r = rows - 1;
      for (int i = 0; i < n; ++i) {
        const double u = x_[i] - 0.5;
        g[r] += w_[i] * u * std::sin(ph[i]);
        for (int k = 1; k < m_; ++k)
          jac(r, k - 1) += w_[i] * u * std::cos(ph[i]) * (b1_[i * m_ + k] - b1_[i * m_]);
      }
    }
    if (order < 2) return;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double *bb = &b2_[(i * n + j) * m_];
        double p2 = -phi0_ / 2;
        for (int k = 0; k < m_; ++k) p2 += a[k] * bb[k];
        const double d = ph[i] - p2;
        const double ww = 0.5 * w_[i] * w_[j] * x_[i];
        g[1] += ww * std::sin(d);
        const double cd = ww * std::cos(d);
        for (int k = 1; k < m_; ++k)
          jac(1, k - 1) += cd * ((b1_[i * m_ + k] - b1_[i * m_]) - (bb[k] - bb[0]));
      }
    }
  }

 private:
  double phi0_;
  int m_;
  std::vector<double> x_, w_, b1_, b2_;
};

// Portable uniform draw in [lo, hi) from the raw engine output.
double uniform(std::mt19937_64 &rng, double lo, double hi) {
  return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

PulseShape find_self_refocusing(int order, double phi0, int num_harmonics, Axis axis,
                                const SelfRefocusingOptions &opt) {
  if (order != 1 && order != 2) throw ConfigError("self-refocusing order must be 1 or 2");
  const int constraints = order + (opt.zero_xi ? 1 : 0);
  if (num_harmonics < constraints + 1)
    throw ConfigError("need at least " + std::to_string(constraints + 1) + " harmonics for this pulse");
  const int m = num_harmonics;
  RefocusingSystem sys(phi0, m);
  std::mt19937_64 rng(0x5eed0000ULL + 97ULL * m + 7ULL * order + (opt.zero_xi ? 1000ULL : 0ULL));
  const double spread = 4.0 + 2.0 * std::abs(phi0);

  bool found = false;
  double best_peak = 0, best_residual = 1e300;
  std::vector<double> best;
  for (int s = 0; s < opt.starts; ++s) {
    Eigen::VectorXd f(m - 1);
    for (int k = 0; k < m - 1; ++k) f[k] = uniform(rng, -spread, spread);
    Eigen::VectorXd g;
    Eigen::MatrixXd jac;
    sys.eval(f, order, opt.zero_xi, g, jac);
    double res = g.cwiseAbs().maxCoeff();
    for (int it = 0; it < opt.max_iterations && res > opt.tolerance * 1e-2; ++it) {
      Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-g);
      double lambda = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 30; ++ls) {
        Eigen::VectorXd trial = f + lambda * step;
        Eigen::VectorXd gt;
        Eigen::MatrixXd jt;
        sys.eval(trial, order, opt.zero_xi, gt, jt);
        double rt = gt.cwiseAbs().maxCoeff();
        if (std::isfinite(rt) && rt < res) {
          f = trial;
          g = gt;
          jac = jt;
          res = rt;
          improved = true;
          break;
        }
        lambda /= 2;
      }
      if (!improved) break;
    }
    best_residual = std::min(best_residual, res);
    if (res > opt.tolerance) continue;
    PulseShape cand = fourier_pulse(axis, phi0, sys.amps(f));
    double peak = cand.peak_amplitude();
    if (!found || peak < best_peak - 1e-9 ||
        (std::abs(peak - best_peak) <= 1e-9 && cand.fourier_amps < best)) {
      found = true;
      best_peak = peak;
      best = cand.fourier_amps;
    }
  }
  if (!found) {
    std::ostringstream os;
    os << "self-refocusing search did not converge (best residual " << best_residual << ")";
    throw NumericError(os.str());
  }
  PulseShape out = fourier_pulse(axis, phi0, best);
  return out;
}

}  // namespace isingdd
