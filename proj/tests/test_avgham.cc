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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "isingdd/avgham.h"
#include "isingdd/sequences.h"

namespace isingdd {
namespace {

constexpr double kPi = std::numbers::pi;

double fitted_exponent(const std::vector<ResidualPoint> &pts) {
  return std::log(pts.back().residual / pts.front().residual) / std::log(pts.back().tau_p / pts.front().tau_p);
}

const PulseShape &order1(double phi0) {
  static const PulseShape pi = find_self_refocusing(1, kPi, 3);
  static const PulseShape half = find_self_refocusing(1, kPi / 2, 3);
  return phi0 == kPi ? pi : half;
}

const PulseShape &order2(double phi0) {
  static const PulseShape pi = find_self_refocusing(2, kPi, 4);
  static const PulseShape half = find_self_refocusing(2, kPi / 2, 4);
  return phi0 == kPi ? pi : half;
}

TEST(PulseAvgHam, ZeroUpsilonLeavesBareBath) {
  const auto bath = BathSpec::random(3, 4);
  const auto c = compute_coefficients(order1(kPi / 2));
  const Mat h = pulse_avg_ham(c, kPi / 2, bath, 0.01, 0);
  EXPECT_LT((h - kron(bath.B, Mat(Mat::Identity(2, 2)))).norm(), 1e-10);
}

TEST(PulseAvgHam, CNumberFirstOrderIsSigmaXOnly) {
  const auto bath = BathSpec::scalar(0.8, -0.3);
  const auto c = compute_coefficients(hann_pulse(Axis::X, kPi));
  const double tau = 0.02;
  const Mat h1 = (pulse_avg_ham(c, kPi, bath, tau, 1) - pulse_avg_ham(c, kPi, bath, tau, 0)) / tau;
  // Only the sigma_x A^2 term survives when [B, A] = 0.
  EXPECT_NEAR(std::abs(h1(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h1(0, 1) - h1(1, 0)), 0.0, 1e-15);
  EXPECT_GT(std::abs(h1(0, 1)), 1e-3);
  // And it agrees with the numerical average at the next order down.
  const Mat num = numeric_avg_ham(single_pulse_schedule(hann_pulse(Axis::X, kPi)), bath_system({bath}), tau);
  EXPECT_LT(opnorm(Mat(num - pulse_avg_ham(c, kPi, bath, tau, 1))), 10 * tau * tau);
}

TEST(PulseAvgHam, SquarePulseResidualIsThirdOrder) {
  const auto s = square_pulse(Axis::X, kPi);
  const auto c = compute_coefficients(s);
  const auto bath = BathSpec::random(3, 11);
  const OpenSystem sys = bath_system({bath});
  const Schedule sched = single_pulse_schedule(s);
  const auto pts = residual_scan(
      {1e-3, 1e-2, 1e-1}, [&](double t) { return pulse_avg_ham(c, kPi, bath, t, 2); },
      [&](double t) { return numeric_avg_ham(sched, sys, t); });
  EXPECT_NEAR(fitted_exponent(pts), 3.0, 0.3);
}

TEST(PulseAvgHam, HermitianAndOrderScaling) {
  const auto c = compute_coefficients(hann_pulse(Axis::X, 1.1));
  const auto bath = BathSpec::random(2, 8);
  const Mat h = pulse_avg_ham(c, 1.1, bath, 0.3, 2);
  EXPECT_LT((h - h.adjoint()).norm(), 1e-14);
  auto part = [&](double t, int k) {
    return Mat(pulse_avg_ham(c, 1.1, bath, t, k) - pulse_avg_ham(c, 1.1, bath, t, k - 1));
  };
  EXPECT_LT((part(0.2, 1) - 2 * part(0.1, 1)).norm(), 1e-13);
  EXPECT_LT((part(0.2, 2) - 4 * part(0.1, 2)).norm(), 1e-13);
}

TEST(PulseAvgHam, WrongAngleRejected) {
  const auto c = compute_coefficients(hann_pulse(Axis::X, kPi));
  EXPECT_THROW(pulse_avg_ham(c, kPi / 2, BathSpec::scalar(1, 0), 0.1, 1), ConfigError);
}

TEST(DcgAvgHam, PartialEulerZerothOrder) {
  const auto c = compute_coefficients(hann_pulse(Axis::X, kPi / 2));
  const auto cpi = compute_coefficients(hann_pulse(Axis::X, kPi));
  const auto bath = BathSpec::random(2, 3);
  const Mat h = dcg_avg_ham(DcgVariant::PartialEuler, c, cpi, kPi / 2, {bath}, 0.1, 0);
  const Mat want = kron(bath.B, Mat(Mat::Identity(2, 2))) -
                   0.5 * c.upsilon * std::sin(kPi / 4) * kron(bath.A, Mat(pauli(Axis::X)));
  EXPECT_LT((h - want).norm(), 1e-14);
}

TEST(DcgAvgHam, PartialEulerLeadingErrorMatchesNumerics) {
  const PulseShape v = hann_pulse(Axis::X, kPi / 2), pi = hann_pulse(Axis::X, kPi);
  const auto c = compute_coefficients(v), cpi = compute_coefficients(pi);
  const auto bath = BathSpec::random(2, 21);
  const Schedule s = dcg_variant_schedule(DcgVariant::PartialEuler, kPi / 2, pi, v);
  const auto pts = residual_scan(
      {1e-3, 1e-2}, [&](double t) { return dcg_avg_ham(DcgVariant::PartialEuler, c, cpi, kPi / 2, {bath}, t, 0); },
      [&](double t) { return numeric_avg_ham(s, bath_system({bath}), t); });
  EXPECT_NEAR(fitted_exponent(pts), 1.0, 0.1);
}

TEST(DcgAvgHam, FullEulerThirdOrderResidual) {
  const PulseShape v = order1(kPi / 2), pi = order1(kPi);
  const auto c = compute_coefficients(v), cpi = compute_coefficients(pi);
  const auto bath = BathSpec::random(2, 5);
  const Schedule s = dcg_variant_schedule(DcgVariant::FullEuler, kPi / 2, pi, v);
  const auto pts = residual_scan(
      {1e-3, 1e-2, 1e-1},
      [&](double t) { return dcg_avg_ham(DcgVariant::FullEuler, c, cpi, kPi / 2, {bath}, t, 2); },
      [&](double t) { return numeric_avg_ham(s, bath_system({bath}), t); });
  EXPECT_NEAR(fitted_exponent(pts), 3.0, 0.3);
}

TEST(DcgAvgHam, FullEulerIsBareBathToFirstOrder) {
  // R = 1 - 16 i tau_p B + O(tau_p^2) for any pulse shape.
  const PulseShape v = hann_pulse(Axis::X, kPi / 2), pi = hann_pulse(Axis::X, kPi);
  const auto bath = BathSpec::random(3, 17);
  const Schedule s = dcg_variant_schedule(DcgVariant::FullEuler, kPi / 2, pi, v);
  const auto pts = residual_scan(
      {1e-3, 1e-2}, [&](double) { return kron(bath.B, Mat(Mat::Identity(2, 2))); },
      [&](double t) { return numeric_avg_ham(s, bath_system({bath}), t); });
  EXPECT_GE(fitted_exponent(pts), 0.9);
  EXPECT_LT(pts.front().residual, 0.1);
}

TEST(DcgAvgHam, AssumptionViolationNamesCoefficient) {
  const auto c = compute_coefficients(hann_pulse(Axis::X, kPi / 2));
  const auto cpi = compute_coefficients(hann_pulse(Axis::X, kPi));
  try {
    dcg_avg_ham(DcgVariant::FullEuler, c, cpi, kPi / 2, {BathSpec::random(2, 1)}, 0.1, 2);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("kappa"), std::string::npos);
  }
}

TEST(DcgAvgHam, Y3pFirstOrderVanishesForCNumbers) {
  SelfRefocusingOptions o;
  o.zero_xi = true;
  o.starts = 16;
  const auto c = compute_coefficients(find_self_refocusing(2, kPi / 2, 5, Axis::X, o));
  const auto cpi = compute_coefficients(find_self_refocusing(2, kPi, 5, Axis::X, o));
  std::vector<BathSpec> baths;
  for (int i = 0; i < 4; ++i) baths.push_back(BathSpec::scalar(0.3 + 0.1 * i, -0.2 * i));
  const Mat h0 = dcg_avg_ham(DcgVariant::Y3p, c, cpi, kPi / 2, baths, 0.1, 0);
  const Mat h1 = dcg_avg_ham(DcgVariant::Y3p, c, cpi, kPi / 2, baths, 0.1, 1);
  EXPECT_LT((h1 - h0).norm(), 1e-14);
  EXPECT_THROW(dcg_avg_ham(DcgVariant::Y3p, c, cpi, kPi / 2, baths, 0.1, 2), ConfigError);
}

TEST(DcgAvgHam, Y3pSymmetrizedSecondOrderResidual) {
  const PulseShape v = order2(kPi / 2), pi = order2(kPi);
  const auto c = compute_coefficients(v), cpi = compute_coefficients(pi);
  std::vector<BathSpec> baths;
  for (int i = 0; i < 4; ++i) baths.push_back(BathSpec::random(2, 40 + i));
  const Schedule s = dcg_variant_schedule(DcgVariant::Y3pSymmetrized, kPi / 2, pi, v);
  const auto pts = residual_scan(
      {1e-3, 1e-2},
      [&](double t) { return dcg_avg_ham(DcgVariant::Y3pSymmetrized, c, cpi, kPi / 2, baths, t, 1); },
      [&](double t) { return numeric_avg_ham_uncoupled(s, baths, t); });
  EXPECT_NEAR(fitted_exponent(pts), 2.0, 0.1);
}

TEST(DcgAvgHam, UncoupledMatchesJointPropagation) {
  std::vector<BathSpec> baths;
  for (int i = 0; i < 2; ++i) baths.push_back(BathSpec::random(2, 70 + i));
  Schedule s = Schedule::empty(2);
  s.segments.push_back(Segment{0, hann_pulse(Axis::X, kPi), 0.0});
  s.segments.push_back(Segment{1, hann_pulse(Axis::Y, kPi / 2), 1.0});
  s.total_duration = 2;
  s.ideal = s.nominal_unitary();
  const Mat joint = numeric_avg_ham(s, bath_system(baths), 0.05);
  EXPECT_LT((joint - numeric_avg_ham_uncoupled(s, baths, 0.05)).norm(), 1e-10);
}

TEST(DcgAvgHam, AllVariantsHermitian) {
  const auto c = compute_coefficients(order2(kPi / 2)), cpi = compute_coefficients(order2(kPi));
  for (DcgVariant v : {DcgVariant::FullEuler, DcgVariant::PartialEuler, DcgVariant::Y3pSymmetrized}) {
    std::vector<BathSpec> baths;
    for (int i = 0; i < dcg_variant_spins(v); ++i) baths.push_back(BathSpec::random(2, 90 + i));
    const int order = v == DcgVariant::Y3pSymmetrized ? 1 : 2;
    const Mat h = dcg_avg_ham(v, c, cpi, kPi / 2, baths, 0.07, order);
    EXPECT_LT((h - h.adjoint()).norm(), 1e-13) << dcg_variant_name(v);
  }
}

}  // namespace
}  // namespace isingdd
