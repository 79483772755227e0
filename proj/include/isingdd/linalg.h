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

#ifndef ISINGDD_LINALG_H
#define ISINGDD_LINALG_H

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isingdd {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr cplx I1{0.0, 1.0};

enum class Axis { X, Y, Z };

Axis axis_from_string(const std::string &s);
std::string axis_name(Axis a);

const Mat2 &pauli(Axis a);
const Mat2 &pauli_i();

/// exp(-i angle/2 sigma^axis), exact.
Mat2 rotation(Axis a, double angle);

/// Kronecker product, left factor most significant.
Mat kron(const Mat &a, const Mat &b);

/// Embed single-qubit operator on qubit q (qubit 0 most significant) of n.
Mat embed1(const Mat2 &op, int q, int n);

inline Mat comm(const Mat &a, const Mat &b) { return a * b - b * a; }

/// Spectral norm.
double opnorm(const Mat &m);

/// exp(-i H t) for Hermitian H via eigendecomposition.
Mat expm_hermitian(const Mat &h, double t);

/// exp(X) for small-norm X by scaled Taylor series.
Mat expm_small(const Mat &x);

/// Random Hermitian matrix with unit spectral norm, from a seeded generator.
Mat random_hermitian(int dim, unsigned long long seed);

/// Haar-ish random unitary (QR of a Gaussian matrix), seeded.
Mat random_unitary(int dim, unsigned long long seed);

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace isingdd

#endif
