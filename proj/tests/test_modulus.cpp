// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "au/gallery.hpp"
#include "au/modulus.hpp"
#include "support.hpp"

using namespace au;

TEST_CASE("modulus of simple shapes") {
  const TailWindow w(0.0, 10.0);
  const auto c = sample(make_gallery(GalleryKind::constant, {4.0}), w, 0.01);
  CHECK(tail_modulus(c, w, 0.3) == 0.0);
  const auto x = sample(make_gallery(GalleryKind::identity), w, 0.125);
  CHECK(tail_modulus(x, w, 0.25) == 0.25);
  CHECK_THROWS(tail_modulus(x, w, 0.0));
  CHECK_THROWS(tail_modulus(x, TailWindow(3.01, 3.1), 0.1));
}

TEST_CASE("sine modulus against brute force and the continuum value") {
  const TailWindow w(0.0, 100.0);
  const auto s = sample(make_gallery(GalleryKind::sine), w, 1e-3);
  const double omega = tail_modulus(s, w, 0.1);
  CHECK(omega == test::brute_modulus(s, 0.0, 100.0, 0.1));
  CHECK(std::abs(omega - 2.0 * std::sin(0.05)) < 1e-3);

  const double deltas[] = {0.1, 0.2};
  const ModulusTable t = modulus_profile(s, w, deltas);
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].omega == doctest::Approx(0.09996).epsilon(1e-3));
  CHECK(t.entries[1].omega == doctest::Approx(0.19933).epsilon(1e-3));
  CHECK(t.entries[0].omega <= t.entries[1].omega);
}

TEST_CASE("profile of identity and aliasing flag") {
  const TailWindow w(0.0, 10.0);
  const auto x = sample(make_gallery(GalleryKind::identity), w, 0.05);
  const double deltas[] = {0.01, 0.1, 0.2, 0.4};
  const ModulusTable t = modulus_profile(x, w, deltas);
  CHECK(t.entries[0].omega == 0.0);
  CHECK(t.entries[0].aliased);
  CHECK(t.entries[1].omega == doctest::Approx(0.1));
  CHECK(t.entries[2].omega == doctest::Approx(0.2));
  CHECK(t.entries[3].omega == doctest::Approx(0.4));
  CHECK_FALSE(t.entries[1].aliased);
  const double bad[] = {0.2, 0.1};
  CHECK_THROWS(modulus_profile(x, w, bad));
}

TEST_CASE("attaining pair is reported") {
  SampledFunction f({0.0, 1.0, 2.0, 3.0}, {0.0, 5.0, 1.0, 1.5});
  const ModulusResult r = tail_modulus_detail(f, f.full_window(), 1.0);
  CHECK(r.omega == 5.0);
  CHECK(r.s_index == 0);
  CHECK(r.t_index == 1);
}

TEST_CASE("property: sliding range equals brute force on random grids") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(2, 300);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    auto times = (trial % 2 == 0) ? test::uniform_times(0.0, 0.01, n)
                                  : test::jittered_times(rng, n, 1e-4, 0.05);
    std::vector<double> v(n);
    double walk = 0.0;
    for (auto& x : v) x = (walk += noise(rng));
    const SampledFunction f(std::move(times), std::move(v));
    const double span = f.back_time() - f.front_time();
    const double T = f.front_time() + frac(rng) * span * 0.5;
    const TailWindow w(T, f.back_time());
    if (f.indices_in(w).size() < 2) continue;
    for (int k = 0; k < 6; ++k) {
      const double delta = span * std::pow(frac(rng), 2.0) + 1e-9;
      CHECK(tail_modulus(f, w, delta) ==
            test::brute_modulus(f, w.T, w.T_max, delta));
    }
  }
}

TEST_CASE("property: monotone in delta and in T, triangle bound for sums") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto times = test::jittered_times(rng, 400, 0.001, 0.03);
    std::vector<double> a(times.size()), b(times.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = std::sin(3.0 * times[i]) + 0.1 * u(rng);
      b[i] = u(rng);
    }
    const SampledFunction f(times, a);
    const SampledFunction g(times, b);
    const SampledFunction s = combine(combine_op::Sum{}, f, &g);
    const TailWindow w = f.full_window();
    const TailWindow later(w.T + 0.3 * w.span(), w.T_max);
    double prev = 0.0;
    for (double d : {0.01, 0.02, 0.05, 0.1, 0.4}) {
      const double om = tail_modulus(f, w, d);
      CHECK(om >= prev);
      prev = om;
      CHECK(tail_modulus(f, later, d) <= om);
      CHECK(tail_modulus(s, w, d) <= om + tail_modulus(g, w, d));
    }
  }
}
