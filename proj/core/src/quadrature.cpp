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

#include "nilelab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "nilelab/error.hpp"

namespace nilelab {
namespace {

// Gauss-Kronrod 15-point abscissae (nonnegative half) and weights, with the
// embedded 7-point Gauss weights at the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxIntervals = 2000;
constexpr int kInitialPieces = 8;

struct Piece {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

class LogIntegrand {
 public:
  explicit LogIntegrand(const LaplaceIntegralSpec& s) : s_(s) {}

  double log_value(double t) const {
    return s_.nu * t - s_.a * std::exp(-t) - s_.b * std::exp(t);
  }
  double slope(double t) const {
    return s_.nu + s_.a * std::exp(-t) - s_.b * std::exp(t);
  }
  // Root of the slope: e^t = (nu + sqrt(nu^2 + 4ab)) / (2b), rewritten to
  // avoid cancellation when nu < 0.
  double peak() const {
    const double disc = std::sqrt(s_.nu * s_.nu + 4.0 * s_.a * s_.b);
    const double et = s_.nu >= 0.0 ? (s_.nu + disc) / (2.0 * s_.b)
                                    : (2.0 * s_.a) / (disc - s_.nu);
    return std::log(et);
  }

 private:
  LaplaceIntegralSpec s_;
};

// Point where the concave log-integrand falls `drop` below its peak value,
// searching in direction `dir` (+1 or -1) from the peak.
double truncation_point(const LogIntegrand& f, double peak, double peak_log,
                        double drop, double dir) {
  double step = 1.0;
  while (f.log_value(peak + dir * step) - peak_log > -drop) {
    step *= 2.0;
    if (step > 1e3) break;
  }
  double inside = 0.0, outside = step;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (f.log_value(peak + dir * mid) - peak_log > -drop) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return peak + dir * outside;
}

Piece gauss_kronrod(const LogIntegrand& f, double peak_log, double lo,
                    double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const auto g = [&](double t) { return std::exp(f.log_value(t) - peak_log); };

  const double fc = g(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = g(center - dx) + g(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

void validate(const LaplaceIntegralSpec& spec, double tol) {
  if (!std::isfinite(spec.nu) || !std::isfinite(spec.a) ||
      !std::isfinite(spec.b)) {
    throw InputError("Laplace integral parameters must be finite");
  }
  if (!(spec.a > 0.0) || !(spec.b > 0.0)) {
    throw DomainError("Laplace integral requires a > 0 and b > 0");
  }
  if (!(tol >= kMinQuadratureTolerance && tol <= kMaxQuadratureTolerance)) {
    throw InputError("quadrature tolerance must lie in [1e-14, 1e-2]");
  }
}

void validate_moment_args(int m, double w, std::size_t n) {
  if (m < 1 || m > kMaxMomentOrder) {
    throw InputError("moment order must lie in [1, 6]");
  }
  if (n == 0) throw InputError("sample size must be at least 1");
  if (!std::isfinite(w) || !(w > 0.0)) {
    throw DomainError("conditioning value w must be positive and finite");
  }
  if (w < kMinConditioningW) {
    throw NearSingularError("w = " + std::to_string(w) +
                            " is below 1e-8, where K_0 diverges");
  }
}

// Integral divided by exp(peak_log), so that ratios survive when the
// integral itself under- or overflows.
struct ScaledIntegral {
  double value;
  double error;
  double log_scale;
  std::size_t evaluations;
};

ScaledIntegral integrate_scaled(const LaplaceIntegralSpec& spec, double tol) {
  validate(spec, tol);
  const LogIntegrand f(spec);
  const double peak = f.peak();
  const double peak_log = f.log_value(peak);

  const double drop = -std::log(kTruncationRatio);
  const double lo = truncation_point(f, peak, peak_log, drop, -1.0);
  const double hi = truncation_point(f, peak, peak_log, drop, +1.0);
  // Beyond the cut the integrand is below 1e-18 of the peak and decays at
  // least exponentially with the local slope.
  const double tail = kTruncationRatio * (1.0 / std::abs(f.slope(lo)) +
                                          1.0 / std::abs(f.slope(hi)));

  std::priority_queue<Piece> pieces;
  double total = 0.0, error = 0.0;
  std::size_t evaluations = 0;
  const double width = (hi - lo) / kInitialPieces;
  for (int i = 0; i < kInitialPieces; ++i) {
    const double a = lo + i * width;
    const double b = i + 1 == kInitialPieces ? hi : a + width;
    Piece p = gauss_kronrod(f, peak_log, a, b);
    evaluations += 15;
    total += p.value;
    error += p.error;
    pieces.push(p);
  }

  while (error + tail > tol * std::abs(total)) {
    if (pieces.size() >= kMaxIntervals) {
      const double scale = std::exp(peak_log);
      throw QuadratureError("Laplace integral did not converge",
                            total * scale, (error + tail) * scale);
    }
    const Piece worst = pieces.top();
    pieces.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Piece left = gauss_kronrod(f, peak_log, worst.lo, mid);
    const Piece right = gauss_kronrod(f, peak_log, mid, worst.hi);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    pieces.push(left);
    pieces.push(right);
  }

  // Recompute the sums from the pieces to shed the running-update rounding.
  total = 0.0;
  error = 0.0;
  std::vector<Piece> all;
  all.reserve(pieces.size());
  while (!pieces.empty()) {
    all.push_back(pieces.top());
    pieces.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  for (const Piece& p : all) {
    total += p.value;
    error += p.error;
  }
  return {total, error + tail, peak_log, evaluations};
}

// e^x K_nu(x) by the trapezoidal rule on K_nu(x) = int_0^inf e^{-x cosh t}
// cosh(nu t) dt. For the even, entire integrand the relative error decays
// like exp(-(2 pi / h)^2 / (2x)), so the step shrinks as x grows.
double bessel_k_scaled(int nu, double x) {
  if (nu < 0) throw DomainError("bessel_k expects a nonnegative order");
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError("bessel_k expects a positive finite argument");
  }
  const double step = std::min(1.0 / 16.0, 2.0 * std::numbers::pi / std::sqrt(100.0 * x));
  constexpr double kDrop = 45.0;
  const double v = static_cast<double>(nu);
  const auto log_term = [&](double t) {
    const double vt = v * t;
    return -x * (std::cosh(t) - 1.0) + vt + std::log1p(std::exp(-2.0 * vt)) -
           std::log(2.0);
  };

  std::vector<double> logs;
  double max_log = -HUGE_VAL;
  for (int k = 0;; ++k) {
    const double t = k * step;
    const double l = log_term(t);
    logs.push_back(l);
    max_log = std::max(max_log, l);
    if (t > 1.0 && l < max_log - kDrop && l < logs[logs.size() - 2]) break;
    if (k > 1000000) throw DomainError("bessel_k: integrand does not decay");
  }
  if (max_log > 700.0) {
    throw DomainError("bessel_k overflows for nu = " + std::to_string(nu) +
                      ", x = " + std::to_string(x));
  }
  double sum = 0.5 * std::exp(logs[0] - max_log);
  for (std::size_t k = 1; k < logs.size(); ++k) sum += std::exp(logs[k] - max_log);
  return step * sum * std::exp(max_log);
}

double scaled_ratio(const ScaledIntegral& num, const ScaledIntegral& den) {
  return num.value / den.value * std::exp(num.log_scale - den.log_scale);
}

}  // namespace

QuadratureResult laplace_integral(const LaplaceIntegralSpec& spec, double tol) {
  const ScaledIntegral r = integrate_scaled(spec, tol);
  if (r.log_scale > 700.0) {
    throw QuadratureError("Laplace integral exceeds double range",
                          HUGE_VAL, HUGE_VAL);
  }
  const double scale = std::exp(r.log_scale);
  return {r.value * scale, r.error * scale, r.evaluations};
}

double bessel_k(int nu, double x) { return bessel_k_scaled(nu, x) * std::exp(-x); }

double laplace_integral_bessel(int nu, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("Laplace integral requires a > 0 and b > 0");
  }
  return 2.0 * std::pow(a / b, 0.5 * nu) * bessel_k(std::abs(nu), 2.0 * std::sqrt(a * b));
}

double cond_moment(int m, double w, std::size_t n, double tol) {
  validate_moment_args(m, w, n);
  const double dn = static_cast<double>(n);
  return scaled_ratio(integrate_scaled({-static_cast<double>(m), dn, dn * w}, tol),
                      integrate_scaled({0.0, dn, dn * w}, tol));
}

double cond_moment_bessel(int m, double w, std::size_t n) {
  validate_moment_args(m, w, n);
  const double x = 2.0 * static_cast<double>(n) * std::sqrt(w);
  return std::pow(w, 0.5 * m) * bessel_k_scaled(m, x) / bessel_k_scaled(0, x);
}

double cond_second_moment_ratio(double w, std::size_t n, double tol) {
  validate_moment_args(2, w, n);
  const double dn = static_cast<double>(n);
  const ScaledIntegral i0 = integrate_scaled({0.0, dn, dn * w}, tol);
  const ScaledIntegral i1 = integrate_scaled({-1.0, dn, dn * w}, tol);
  const ScaledIntegral i2 = integrate_scaled({-2.0, dn, dn * w}, tol);
  return scaled_ratio(i2, i1) * scaled_ratio(i0, i1);
}

}  // namespace nilelab
