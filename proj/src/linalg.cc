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

#include "isingdd/linalg.h"

#include <cmath>
#include <random>

namespace isingdd {

Axis axis_from_string(const std::string &s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw ConfigError("unknown axis '" + s + "'");
}

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::X:
      return "x";
    case Axis::Y:
      return "y";
    case Axis::Z:
      return "z";
  }
  return "?";
}

const Mat2 &pauli(Axis a) {
  static const Mat2 sx = (Mat2() << 0, 1, 1, 0).finished();
  static const Mat2 sy = (Mat2() << 0, -I1, I1, 0).finished();
  static const Mat2 sz = (Mat2() << 1, 0, 0, -1).finished();
  switch (a) {
    case Axis::X:
      return sx;
    case Axis::Y:
      return sy;
    default:
      return sz;
  }
}

const Mat2 &pauli_i() {
  static const Mat2 id = Mat2::Identity();
  return id;
}

Mat2 rotation(Axis a, double angle) {
  return std::cos(angle / 2) * Mat2::Identity() - I1 * std::sin(angle / 2) * pauli(a);
}

Mat kron(const Mat &a, const Mat &b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat embed1(const Mat2 &op, int q, int n) {
  Mat left = Mat::Identity(1 << q, 1 << q);
  Mat right = Mat::Identity(1 << (n - q - 1), 1 << (n - q - 1));
  return kron(kron(left, Mat(op)), right);
}

double opnorm(const Mat &m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

Mat expm_hermitian(const Mat &h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec ph = (-I1 * t * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Mat expm_small(const Mat &x) {
  double nrm = x.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (nrm > 0.125) {
    nrm /= 2;
    ++s;
  }
  Mat y = x / std::ldexp(1.0, s);
  Mat out = Mat::Identity(x.rows(), x.cols());
  Mat term = out;
  for (int k = 1; k <= 14; ++k) {
    term = term * y / double(k);
    out += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < s; ++i) out = out * out;
  return out;
}

Mat random_hermitian(int dim, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  Mat h = (m + m.adjoint()) / 2.0;
  double nrm = opnorm(h);
  return nrm > 0 ? Mat(h / nrm) : h;
}

Mat random_unitary(int dim, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(m);
  return qr.householderQ() * Mat::Identity(dim, dim);
}

}  // namespace isingdd
