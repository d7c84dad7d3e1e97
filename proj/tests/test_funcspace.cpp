// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "au/detect.hpp"
#include "au/error.hpp"
#include "au/funcspace.hpp"
#include "au/gallery.hpp"
#include "au/modulus.hpp"
#include "support.hpp"

using namespace au;

TEST_CASE("sampled function validates its samples") {
  CHECK_THROWS_AS(SampledFunction({0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SampledFunction({0.0, 1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SampledFunction({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(SampledFunction({1.0, 0.5}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(SampledFunction({0.0, 1.0}, {1.0, NAN}), std::invalid_argument);
  CHECK_THROWS_AS(SampledFunction({0.0, 1.0}, {INFINITY, 0.0}), std::invalid_argument);

  SampledFunction f({0.0, 0.5, 2.0}, {1.0, 2.0, 3.0});
  CHECK(f.size() == 3);
  CHECK(f.tag(1) == PointTag::none);
  CHECK(f.max_spacing({0, 3}) == 1.5);
  CHECK(f.min_spacing({0, 3}) == 0.5);
  CHECK(f.index_of(0.5) == std::optional<std::size_t>(1));
  CHECK_FALSE(f.index_of(0.6).has_value());
  const IndexRange r = f.indices_in(TailWindow(0.25, 2.0));
  CHECK(r.first == 1);
  CHECK(r.last == 3);
}

TEST_CASE("tail window requires 0 <= T < T_max") {
  CHECK_THROWS(TailWindow(-1.0, 2.0));
  CHECK_THROWS(TailWindow(2.0, 2.0));
  CHECK_THROWS(TailWindow(0.0, INFINITY));
  CHECK(TailWindow(0.0, 2.0).span() == 2.0);
}

TEST_CASE("combine: sum, scale, compose") {
  const auto sine = make_gallery(GalleryKind::sine);
  const auto id = make_gallery(GalleryKind::identity);
  const TailWindow w(0.0, 10.0);
  const SampledFunction s = sample(sine, w, 0.01);
  const SampledFunction x = sample(id, w, 0.01);

  const SampledFunction neg = combine(combine_op::Scale{-1.0}, s);
  const SampledFunction zero = combine(combine_op::Sum{}, s, &neg);
  for (double v : zero.values()) CHECK(v == 0.0);

  const SampledFunction twice = combine(combine_op::Scale{2.0}, x);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(twice.value(i) == 2.0 * x.time(i));

  const SampledFunction composed =
      combine(combine_op::ComposeUc{{UcOuter::Kind::sine}}, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(composed.value(i) == std::sin(x.time(i)));
  }

  const SampledFunction other = sample(sine, TailWindow(0.0, 5.0), 0.01);
  CHECK_THROWS_AS(combine(combine_op::Sum{}, s, &other), GridMismatch);
  CHECK_THROWS(combine(combine_op::Sum{}, s));
}

TEST_CASE("combine preserves tags") {
  const auto pe = make_gallery(GalleryKind::punctured_exp);
  const SampledFunction f = sample(pe, TailWindow(0.0, 3.0), 0.5);
  const SampledFunction g = combine(combine_op::Scale{3.0}, f);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(g.tag(i) == f.tag(i));
}

TEST_CASE("uc outers and their moduli") {
  UcOuter clamp{UcOuter::Kind::clamp, -0.5, 0.5};
  CHECK(clamp(2.0) == 0.5);
  CHECK(clamp(-2.0) == -0.5);
  CHECK(clamp.modulus(3.0) == 1.0);
  UcOuter sine{UcOuter::Kind::sine};
  CHECK(sine.modulus(0.1) == 0.1);
  CHECK(sine.modulus(5.0) == 2.0);
  UcOuter absolute{UcOuter::Kind::absolute};
  CHECK(absolute(-3.0) == 3.0);
}

// Vector-space property: certificates add under sums.
TEST_CASE("property: sum of certified functions holds at eps1 + eps2") {
  std::mt19937_64 rng(11);
  const std::vector<GalleryKind> smooth{
      GalleryKind::sine, GalleryKind::exp_decay, GalleryKind::damped_sine,
      GalleryKind::slow_chirp_decay, GalleryKind::damped_square_wave_primitive,
      GalleryKind::punctured_exp, GalleryKind::constant};
  std::uniform_int_distribution<std::size_t> pick(0, smooth.size() - 1);
  std::uniform_real_distribution<double> eps_dist(0.05, 0.5);
  const TailWindow w(0.0, 40.0);
  for (int trial = 0; trial < 40; ++trial) {
    const SampledFunction f = sample(make_gallery(smooth[pick(rng)]), w, 0.01);
    const SampledFunction g = sample(make_gallery(smooth[pick(rng)]), w, 0.01);
    const double e1 = eps_dist(rng), e2 = eps_dist(rng);
    const Verdict vf = detect_au(f, e1, w);
    const Verdict vg = detect_au(g, e2, w);
    if (!vf.holds() || !vg.holds()) continue;
    const double T = std::max(vf.certificate->T, vg.certificate->T);
    const double delta = std::min(vf.certificate->delta, vg.certificate->delta);
    const SampledFunction sum = combine(combine_op::Sum{}, f, &g);
    CHECK(tail_modulus(sum, TailWindow(T, w.T_max), delta) < e1 + e2);
    CHECK(detect_au(sum, e1 + e2, w).holds());
  }
}

TEST_CASE("property: composing with a uniformly continuous outer keeps a.u.") {
  const TailWindow w(0.0, 40.0);
  const std::vector<UcOuter> outers{{UcOuter::Kind::sine},
                                    {UcOuter::Kind::absolute},
                                    {UcOuter::Kind::clamp, -0.3, 0.3}};
  for (GalleryKind kind : {GalleryKind::sine, GalleryKind::damped_sine,
                           GalleryKind::identity, GalleryKind::exp_decay}) {
    const SampledFunction f = sample(make_gallery(kind), w, 0.01);
    const Verdict v = detect_au(f, 0.2, w);
    REQUIRE(v.holds());
    for (const UcOuter& outer : outers) {
      const SampledFunction g = combine(combine_op::ComposeUc{outer}, f);
      // |outer(a) - outer(b)| <= modulus(|a - b|) pairwise
      const double bound = outer.modulus(tail_modulus(
          f, TailWindow(v.certificate->T, w.T_max), v.certificate->delta));
      CHECK(tail_modulus(g, TailWindow(v.certificate->T, w.T_max),
                         v.certificate->delta) <= bound);
    }
  }
}
