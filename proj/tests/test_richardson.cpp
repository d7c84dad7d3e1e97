// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cfloat>
#include <cmath>
#include <random>

#include "au/richardson.hpp"

using namespace au;
using Quad = boost::multiprecision::cpp_bin_float_quad;

TEST_CASE("remainder polynomial") {
  CHECK(remainder_poly(TaylorCoefficients({1.0}), 0.5) == 0.5);
  CHECK(remainder_poly(TaylorCoefficients({0.0, 0.0, 0.0}), 0.7) == 0.0);
  CHECK(remainder_poly(TaylorCoefficients({1.0, 1.0, 1.0}), 1.0) == 3.0);
  CHECK_THROWS(remainder_poly(TaylorCoefficients({1.0}), -0.1));
  CHECK_THROWS(TaylorCoefficients({}));
  CHECK_THROWS(TaylorCoefficients({NAN}));
}

TEST_CASE("single elimination steps") {
  const auto a = eliminate_step(1, TaylorCoefficients({3.0, 4.0}));
  CHECK(a.c[0] == 0.0);
  CHECK(a.c[1] == 2.0);
  CHECK(eliminate_step(1, TaylorCoefficients({5.0})).c[0] == 0.0);
  const auto b = eliminate_step(2, eliminate_step(1, TaylorCoefficients({1.0, 1.0, 1.0})));
  CHECK(b.c[0] == 0.0);
  CHECK(b.c[1] == 0.0);
  CHECK(b.c[2] == 0.375);
  CHECK_THROWS(eliminate_step(0, TaylorCoefficients({1.0})));
  CHECK_THROWS(eliminate_step(3, TaylorCoefficients({1.0, 2.0})));
}

TEST_CASE("full elimination") {
  CHECK(eliminate_full(TaylorCoefficients({7.0})).final_coefficient == 7.0);
  CHECK(eliminate_full(TaylorCoefficients({3.0, 4.0})).final_coefficient == 2.0);
  const auto r = eliminate_full(TaylorCoefficients({1.0, 1.0, 1.0, 1.0}));
  CHECK(r.final_coefficient == 0.328125);
  CHECK(r.table.kappa == 0.328125);
  CHECK(r.table.levels.size() == 4);
  CHECK(elimination_kappa(1) == 1.0);
}

// Oracle: apply P_j(h) = P_{j-1}(h) - 2^j P_{j-1}(h/2) to the polynomial
// values themselves and compare with the coefficient-level table.
TEST_CASE("property: table matches the value recursion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = u(rng);
    const TaylorCoefficients tc(c);
    const auto r = eliminate_full(tc);
    const double h = 0.75;
    // P_0 at h/2^i, i = 0..n-1
    std::vector<double> p(static_cast<std::size_t>(n));
    double mag = 0.0;
    for (int i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(i)] = remainder_poly(tc, std::ldexp(h, -i));
      mag = std::max(mag, std::abs(p[static_cast<std::size_t>(i)]));
    }
    // err bounds the rounding error carried by every entry of the value table
    double err = 4.0 * n * DBL_EPSILON * mag;
    for (int j = 1; j < n; ++j) {
      double level_mag = 0.0;
      for (int i = 0; i + j < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        p[ui] = p[ui] - std::ldexp(1.0, j) * p[ui + 1];
        level_mag = std::max(level_mag, std::abs(p[ui]));
      }
      err = err * (1.0 + std::ldexp(1.0, j)) + 2.0 * DBL_EPSILON * level_mag;
      const double table = remainder_poly(r.table.levels[static_cast<std::size_t>(j)], h);
      CHECK(std::abs(table - p[0]) <= 4.0 * err + 1e-15);
    }
    const double closed = c.back() * elimination_kappa(n);
    CHECK(std::abs(r.final_coefficient - closed) <= 1e-12 * std::abs(closed));
    for (int j = 1; j < n; ++j) {
      const auto& level = r.table.levels[static_cast<std::size_t>(j)];
      for (int k = 1; k <= j; ++k) CHECK(level.c[static_cast<std::size_t>(k - 1)] == 0.0);
      for (int k = j + 1; k <= n; ++k) {
        double prod = 1.0;
        for (int i = 1; i <= j; ++i) prod *= 1.0 - std::ldexp(1.0, i - k);
        CHECK(level.c[static_cast<std::size_t>(k - 1)] ==
              doctest::Approx(c[static_cast<std::size_t>(k - 1)] * prod).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("property: boundedness propagates through the levels") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 6;
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = u(rng);
    const TaylorCoefficients tc(c);
    const double h = 0.9;
    double M = 0.0;
    for (int i = 0; i < n; ++i) M = std::max(M, std::abs(remainder_poly(tc, std::ldexp(h, -i))));
    TaylorCoefficients level = tc;
    double factor = 1.0;
    for (int j = 1; j < n; ++j) {
      level = eliminate_step(j, level);
      factor *= 1.0 + std::ldexp(1.0, j);
      CHECK(std::abs(remainder_poly(level, h)) <= factor * M * (1 + 1e-12));
    }
  }
}

TEST_CASE("derivative estimator") {
  CHECK(richardson_derivative([](double t) { return t; }, 3.0, 0.25, 1).value == 1.0);
  const auto cube = richardson_derivative([](double t) { return t * t * t; }, 2.0, 0.5, 3);
  CHECK(std::abs(cube.value - 6.0) < 1e-9);
  const auto e = richardson_derivative([](double t) { return std::exp(-t); }, 0.0, 0.1, 2);
  CHECK(std::abs(e.value - 1.0) < 0.1);
  CHECK_FALSE(e.flagged);
  CHECK_THROWS(richardson_derivative([](double t) { return t; }, 0.0, 0.0, 1));
  CHECK_THROWS(richardson_derivative([](double t) { return t; }, 0.0, 0.1, 0));
  const std::function<double(double)> bad = [](double t) { return t > 0.5 ? NAN : t; };
  CHECK_THROWS_AS(richardson_derivative(bad, 0.0, 1.0, 2), Error);
}

TEST_CASE("cancellation is flagged") {
  const auto r = richardson_derivative([](double t) { return std::pow(t, 5); }, 10.0, 0.01, 5);
  CHECK(r.flagged);
  CHECK(r.condition > kConditionLimit);
}

// Oracle: symbolic derivatives of monomials, k! / (k-m)! t^(k-m).
TEST_CASE("property: exact on monomials of degree <= n, linear in f") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tdist(0.1, 3.0);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) {
      const Quad t = tdist(rng);
      auto mono = [k](const Quad& x) { return boost::multiprecision::pow(x, k); };
      const auto est = richardson_derivative<Quad>(mono, t, Quad(0.5), n);
      const double expected = (k == n) ? std::tgamma(n + 1.0) : 0.0;
      CHECK(std::abs(static_cast<double>(est.value) - expected) < 1e-12);
    }
    const double t = tdist(rng);
    auto f = [](double x) { return std::sin(x); };
    auto g = [](double x) { return x * x * x; };
    auto fg = [&](double x) { return 2.0 * f(x) + 3.0 * g(x); };
    const double lhs = richardson_derivative(fg, t, 0.5, n).value;
    const double rhs = 2.0 * richardson_derivative(f, t, 0.5, n).value +
                       3.0 * richardson_derivative(g, t, 0.5, n).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}
