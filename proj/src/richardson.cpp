// SPDX-License-Identifier: Apache-2.0
#include "au/richardson.hpp"

#include <cmath>
#include <stdexcept>

namespace au {

TaylorCoefficients::TaylorCoefficients(std::vector<double> coeffs)
    : c(std::move(coeffs)) {
  if (c.empty()) throw std::invalid_argument("need at least one coefficient");
  for (double x : c) {
    if (!std::isfinite(x)) throw std::invalid_argument("coefficients must be finite");
  }
}

double remainder_poly(const TaylorCoefficients& coeffs, double h) {
  if (!(h >= 0.0)) throw std::invalid_argument("h must be >= 0");
  double acc = 0.0;
  for (auto it = coeffs.c.rbegin(); it != coeffs.c.rend(); ++it) {
    acc = acc * h + *it;
  }
  return acc * h;
}

TaylorCoefficients eliminate_step(int j, const TaylorCoefficients& coeffs) {
  const int n = coeffs.order();
  if (j < 1 || j > n) throw std::out_of_range("elimination level out of range");
  TaylorCoefficients out = coeffs;
  for (int k = 1; k <= n; ++k) {
    auto& x = out.c[static_cast<std::size_t>(k - 1)];
    x = (k == j) ? 0.0 : x * (1.0 - std::ldexp(1.0, j - k)) + 0.0;
  }
  return out;
}

double elimination_kappa(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  double kappa = 1.0;
  for (int m = 1; m < n; ++m) kappa *= 1.0 - std::ldexp(1.0, -m);
  return kappa;
}

EliminationResult eliminate_full(const TaylorCoefficients& coeffs) {
  const int n = coeffs.order();
  EliminationResult r;
  r.table.levels.push_back(coeffs);
  for (int j = 1; j < n; ++j) {
    r.table.levels.push_back(eliminate_step(j, r.table.levels.back()));
  }
  r.table.kappa = elimination_kappa(n);
  r.final_coefficient = r.table.levels.back().c.back();
  return r;
}

DerivativeEstimate<double> richardson_derivative(
    const std::function<double(double)>& f, double t, double h, int n) {
  auto checked = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw Error("evaluator returned a non-finite value");
    return v;
  };
  return richardson_derivative<double>(checked, t, h, n);
}

}  // namespace au
