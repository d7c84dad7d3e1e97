// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "au/verdict.hpp"

namespace au {

/// Outcome of the sequence test n -> f(n t) for one t.
struct CroftSequence {
  double t = 0.0;
  Status status = Status::inconclusive;
  std::int64_t worst_n = 0;  // n with the largest |f(n t)| in the tested range
  double worst_value = 0.0;
};

struct CroftResult {
  std::vector<CroftSequence> sequences;
  std::int64_t n_first = 0;  // tested n range [n_first, n_max]
  std::int64_t n_max = 0;
  double epsilon = 0.0;
  double c_fraction = 0.0;  // share of t values whose sequence Holds
  bool cstar = false;       // every sequence Holds
};

/// 32 (or `count`) sample points t_m = (m * golden ratio) mod range,
/// m = 1..count. Multiples of the golden ratio stay away from rationals
/// with small denominators.
std::vector<double> default_croft_t_values(int count = 32, double range = 4.0);

/// For each t, checks |f(n t)| < eps for every n in the final quarter of
/// 1..n_max. Throws std::invalid_argument on bad arguments and au::Error
/// when n t or f(n t) is not finite.
CroftResult croft_test(const std::function<double(double)>& f,
                       std::span<const double> t_values, std::int64_t n_max,
                       double eps);

}  // namespace au
