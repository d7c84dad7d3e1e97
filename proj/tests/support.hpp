// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "au/funcspace.hpp"

namespace au::test {

// Quadratic scan over every pair with t - s <= delta inside [T, T_max].
inline double brute_modulus(const SampledFunction& f, double T, double T_max,
                            double delta) {
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.time(i) < T || f.time(i) > T_max) continue;
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (f.time(j) > T_max || f.time(j) - f.time(i) > delta) break;
      best = std::max(best, std::abs(f.value(j) - f.value(i)));
    }
  }
  return best;
}

inline std::vector<double> uniform_times(double start, double step, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = start + static_cast<double>(i) * step;
  return t;
}

// Strictly increasing times with random gaps in [lo, hi).
inline std::vector<double> jittered_times(std::mt19937_64& rng, std::size_t n,
                                          double lo, double hi) {
  std::uniform_real_distribution<double> gap(lo, hi);
  std::vector<double> t(n);
  t[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) t[i] = t[i - 1] + gap(rng);
  return t;
}

template <class F>
SampledFunction tabulate(std::vector<double> times, F&& f) {
  std::vector<double> v(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) v[i] = f(times[i]);
  return SampledFunction(std::move(times), std::move(v));
}

}  // namespace au::test
