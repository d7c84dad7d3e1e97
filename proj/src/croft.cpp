// SPDX-License-Identifier: Apache-2.0
#include "au/croft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "au/error.hpp"

namespace au {

std::vector<double> default_croft_t_values(int count, double range) {
  if (count < 1 || !(range > 0.0)) {
    throw std::invalid_argument("croft t-value count and range must be positive");
  }
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(count));
  for (int m = 1; m <= count; ++m) {
    ts.push_back(std::fmod(m * std::numbers::phi, range));
  }
  return ts;
}

CroftResult croft_test(const std::function<double(double)>& f,
                       std::span<const double> t_values, std::int64_t n_max,
                       double eps) {
  if (n_max < 10) throw std::invalid_argument("n_max must be >= 10");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (t_values.empty()) throw std::invalid_argument("no t values");

  CroftResult out;
  out.n_first = (3 * n_max) / 4 + 1;
  out.n_max = n_max;
  out.epsilon = eps;
  std::size_t holding = 0;
  for (double t : t_values) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw std::invalid_argument("croft t values must be positive");
    }
    CroftSequence seq;
    seq.t = t;
    seq.worst_n = out.n_first;
    for (std::int64_t n = out.n_first; n <= n_max; ++n) {
      const double x = static_cast<double>(n) * t;
      if (!std::isfinite(x)) {
        throw Error("croft evaluation point n*t is not representable");
      }
      const double y = f(x);
      if (!std::isfinite(y)) {
        throw Error("croft evaluation f(n*t) is not finite at n = " +
                    std::to_string(n));
      }
      if (std::abs(y) > std::abs(seq.worst_value) || n == out.n_first) {
        seq.worst_value = y;
        seq.worst_n = n;
      }
    }
    seq.status =
        std::abs(seq.worst_value) < eps ? Status::holds : Status::refuted;
    if (seq.status == Status::holds) ++holding;
    out.sequences.push_back(seq);
  }
  out.c_fraction =
      static_cast<double>(holding) / static_cast<double>(t_values.size());
  out.cstar = holding == t_values.size();
  return out;
}

}  // namespace au
