// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "au/error.hpp"

namespace au {

/// c[k-1] = f^(k)(t) / k! for k = 1..n.
struct TaylorCoefficients {
  std::vector<double> c;

  explicit TaylorCoefficients(std::vector<double> coeffs);
  int order() const noexcept { return static_cast<int>(c.size()); }
};

/// sum_k c[k-1] h^k in nested form. Requires h >= 0.
double remainder_poly(const TaylorCoefficients& coeffs, double h);

/// One level of P_j(h) = P_{j-1}(h) - 2^j P_{j-1}(h/2):
/// c'[k] = c[k] (1 - 2^(j-k)), so c'[j] is exactly 0. Requires 1 <= j <= n.
TaylorCoefficients eliminate_step(int j, const TaylorCoefficients& coeffs);

/// prod_{m=1}^{n-1} (1 - 2^-m); 1 for n = 1.
double elimination_kappa(int n);

struct EliminationTable {
  std::vector<TaylorCoefficients> levels;  // levels[j] after steps 1..j
  double kappa = 1.0;
};

struct EliminationResult {
  double final_coefficient = 0.0;  // c[n] after steps 1..n-1
  EliminationTable table;
};

EliminationResult eliminate_full(const TaylorCoefficients& coeffs);

template <class Real>
struct DerivativeEstimate {
  Real value{};
  double condition = 1.0;  // largest intermediate magnitude / |final difference|
  bool flagged = false;    // condition above kConditionLimit
};

inline constexpr double kConditionLimit = 1e8;

/// n-th derivative from f(t + h 2^-i), i = 0..n-1, and f(t): the forward
/// difference D^0_h = f(t+h) - f(t) is pushed through the elimination
/// levels, then n! D^{n-1}_h / (kappa_n h^n). Exact for polynomials of
/// degree <= n up to rounding; Real may be any floating type.
template <class Real, class F>
DerivativeEstimate<Real> richardson_derivative(F&& f, Real t, Real h, int n) {
  using std::abs;
  if (!(h > Real(0))) throw std::invalid_argument("h must be positive");
  if (n < 1 || n > 30) throw std::invalid_argument("n must lie in 1..30");
  const auto N = static_cast<std::size_t>(n);
  const Real base = f(t);
  Real largest = abs(base);
  std::vector<Real> d(N);
  Real offset = h;
  for (std::size_t i = 0; i < N; ++i) {
    const Real value = f(t + offset);
    largest = std::max<Real>(largest, abs(value));
    d[i] = value - base;
    offset /= 2;
  }
  Real scale = 1;
  for (int j = 1; j < n; ++j) {
    scale *= 2;
    for (std::size_t i = 0; i + static_cast<std::size_t>(j) < N; ++i) {
      d[i] = d[i] - scale * d[i + 1];
      largest = std::max<Real>(largest, abs(d[i]));
    }
  }
  Real kappa = 1;
  Real factorial = 1;
  Real hn = 1;
  Real inv_pow = 1;
  for (int m = 1; m <= n; ++m) {
    factorial *= m;
    hn *= h;
    if (m < n) {
      inv_pow /= 2;
      kappa *= Real(1) - inv_pow;
    }
  }
  DerivativeEstimate<Real> out;
  out.value = factorial * d[0] / (kappa * hn);
  const Real final_mag = abs(d[0]);
  if (final_mag > Real(0)) {
    out.condition = static_cast<double>(largest / final_mag);
  } else {
    out.condition = largest > Real(0) ? std::numeric_limits<double>::infinity()
                                      : 1.0;
  }
  out.flagged = !(out.condition <= kConditionLimit);
  return out;
}

/// Double-precision entry point for callers holding a plain evaluator.
/// Throws au::Error when an evaluation is not finite.
DerivativeEstimate<double> richardson_derivative(
    const std::function<double(double)>& f, double t, double h, int n);

}  // namespace au
