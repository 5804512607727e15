// Copyright 2026 The nilelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NILELAB_QUADRATURE_HPP_
#define NILELAB_QUADRATURE_HPP_

#include <cstddef>

namespace nilelab {

// The integral  I(nu, a, b) = int_0^inf z^(nu - 1) exp(-a/z - b z) dz,
// finite for every real nu when a > 0 and b > 0.
//
// With a = n and b = n w, nu = 0 gives the denominator and nu = -m the
// numerator of E_1(Ybar^m | W = w) in the Nile problem.
struct LaplaceIntegralSpec {
  double nu;
  double a;
  double b;
};

struct QuadratureResult {
  double value;
  double abs_error_estimate;
  std::size_t evaluations;
};

inline constexpr double kDefaultQuadratureTolerance = 1e-10;
inline constexpr double kMinQuadratureTolerance = 1e-14;
inline constexpr double kMaxQuadratureTolerance = 1e-2;
// Integrand is truncated where it drops below this fraction of its peak.
inline constexpr double kTruncationRatio = 1e-18;

// Adaptive Gauss-Kronrod (7/15) quadrature after z = e^t, which maps the
// half line onto the real line and makes the log-integrand concave.
// Guarantees abs_error_estimate <= tol * |value| or throws QuadratureError
// with the partial result. tol must lie in [1e-14, 1e-2].
QuadratureResult laplace_integral(const LaplaceIntegralSpec& spec,
                                  double tol = kDefaultQuadratureTolerance);

// Modified Bessel function of the second kind K_nu(x) for integer nu >= 0,
// from K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt on a fixed
// trapezoidal grid. Shares no code with laplace_integral so that the two
// can validate each other. Throws DomainError if x <= 0 or the integrand
// overflows (tiny x with large nu).
double bessel_k(int nu, double x);

// Closed form 2 (a/b)^(nu/2) K_|nu|(2 sqrt(a b)) of I(nu, a, b), integer nu.
double laplace_integral_bessel(int nu, double a, double b);

inline constexpr int kMaxMomentOrder = 6;
inline constexpr double kMinConditioningW = 1e-8;

// E_1(Ybar^m | W = w) for a Nile sample of size n at theta = 1:
// I(-m, n, n w) / I(0, n, n w) = w^(m/2) K_m(2 n sqrt(w)) / K_0(2 n sqrt(w)).
// 1 <= m <= 6. Below w = 1e-8 the K_0 denominator is log-divergent and a
// NearSingularError is thrown instead of extrapolating.
double cond_moment(int m, double w, std::size_t n,
                   double tol = kDefaultQuadratureTolerance);

// Same quantity through the Bessel closed form; the cross-check path.
double cond_moment_bessel(int m, double w, std::size_t n);

// E_1(Ybar^2 | W) / E_1(Ybar | W)^2 = K_2 K_0 / K_1^2 at 2 n sqrt(w).
// Equals E(theta*^2 | W = w) / theta^2 for theta* = Ybar h*(W); it is > 1
// and decreases to 1 as w grows.
double cond_second_moment_ratio(double w, std::size_t n,
                                double tol = kDefaultQuadratureTolerance);

}  // namespace nilelab

#endif  // NILELAB_QUADRATURE_HPP_
