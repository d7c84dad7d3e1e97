// SPDX-License-Identifier: Apache-2.0
#include "au/detect.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "au/modulus.hpp"

namespace au {
namespace {

void require_positive(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be positive");
  }
}

struct Extremes {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
};

Extremes extremes(const SampledFunction& f, IndexRange r) {
  Extremes e{f.value(r.first), f.value(r.first), r.first, r.first};
  for (std::size_t i = r.first + 1; i < r.last; ++i) {
    const double v = f.value(i);
    if (v < e.lo) {
      e.lo = v;
      e.argmin = i;
    }
    if (v > e.hi) {
      e.hi = v;
      e.argmax = i;
    }
  }
  return e;
}

std::size_t argmax_abs(const SampledFunction& f, IndexRange r) {
  std::size_t best = r.first;
  for (std::size_t i = r.first + 1; i < r.last; ++i) {
    if (std::abs(f.value(i)) > std::abs(f.value(best))) best = i;
  }
  return best;
}

Verdict base_verdict(Property p, double eps, const TailWindow& window,
                     const SampledFunction& f, IndexRange range) {
  Verdict v;
  v.property = p;
  v.epsilon = eps;
  v.window = window;
  v.resolution = f.max_spacing(range);
  return v;
}

struct TailHalves {
  IndexRange range;
  std::size_t half = 0;
  std::size_t quarter = 0;
};

TailHalves tail_halves(const SampledFunction& f, const TailWindow& window) {
  TailHalves h;
  h.range = f.indices_in(window);
  if (h.range.size() < 3) {
    throw std::invalid_argument("window too short: fewer than 3 points");
  }
  h.half = tail_start(f, h.range, 0.5);
  h.quarter = tail_start(f, h.range, 0.75);
  if (h.range.last - h.half < 3) {
    throw std::invalid_argument(
        "window too short: fewer than 3 points in the final half");
  }
  return h;
}

Verdict search_au(Property property, const SampledFunction& f, double eps,
                  const TailWindow& window, std::span<const double> quantiles) {
  require_positive(eps);
  const IndexRange range = f.indices_in(window);
  if (range.size() < 3) {
    Verdict v;
    v.property = property;
    v.epsilon = eps;
    v.window = window;
    v.notes = "window holds fewer than 3 points";
    return v;
  }
  Verdict v = base_verdict(property, eps, window, f, range);
  const double t_last = f.time(range.last - 1);
  const double span = t_last - f.time(range.first);
  const std::vector<double> ladder = delta_ladder(span, v.resolution);
  if (ladder.empty()) {
    v.notes = "window shorter than 20 grid steps; no admissible delta";
    return v;
  }
  const double slack = rounding_slack(f, range);

  for (double q : quantiles) {
    const std::size_t start = tail_start(f, range, q);
    const double tail_span = t_last - f.time(start);
    for (double delta : ladder) {
      if (tail_span < 3.0 * delta) continue;
      ModulusResult m =
          range_modulus(f.times(), f.values(), {start, range.last}, delta);
      if (m.omega < eps - slack) {
        v.status = Status::holds;
        v.certificate = Certificate{eps, f.time(start), delta, std::nullopt};
        return v;
      }
    }
  }

  const std::size_t start = tail_start(f, range, quantiles.back());
  const double finest = ladder.back();
  if (t_last - f.time(start) < 3.0 * finest) {
    v.notes = "latest tail shorter than 3 delta";
    return v;
  }
  ModulusResult m =
      range_modulus(f.times(), f.values(), {start, range.last}, finest);
  if (m.omega >= eps) {
    v.status = Status::refuted;
    v.witness =
        Witness{f.time(m.s_index), f.time(m.t_index), m.omega, finest};
    return v;
  }
  v.notes = "modulus within rounding slack of eps";
  return v;
}

}  // namespace

std::vector<double> delta_ladder(double span, double step) {
  std::vector<double> ladder;
  double delta = span / 10.0;
  while (delta >= 2.0 * step && ladder.size() < 64) {
    ladder.push_back(delta);
    delta /= 2.0;
  }
  return ladder;
}

double rounding_slack(const SampledFunction& f, IndexRange range) {
  return 1e-12 * max_abs(f, range);
}

std::size_t tail_start(const SampledFunction& f, IndexRange range,
                       double fraction) {
  const double t0 = f.time(range.first);
  const double span = f.time(range.last - 1) - t0;
  const std::size_t i = f.lower_index(t0 + fraction * span);
  return std::clamp(i, range.first, range.last - 1);
}

Verdict detect_limit(const SampledFunction& f, const TailWindow& window,
                     double eps) {
  require_positive(eps);
  const TailHalves h = tail_halves(f, window);
  Verdict v = base_verdict(Property::limit_exists, eps, window, f, h.range);
  const double slack = rounding_slack(f, h.range);
  const double t_last = f.time(h.range.last - 1);

  const Extremes tail = extremes(f, {h.half, h.range.last});
  if (tail.hi - tail.lo < eps - slack) {
    double sum = 0.0;
    for (std::size_t i = h.quarter; i < h.range.last; ++i) sum += f.value(i);
    v.status = Status::holds;
    v.certificate =
        Certificate{eps, f.time(h.half), t_last - f.time(h.half),
                    sum / static_cast<double>(h.range.last - h.quarter)};
    return v;
  }
  const Extremes last = extremes(f, {h.quarter, h.range.last});
  if (last.hi - last.lo >= eps) {
    v.status = Status::refuted;
    const std::size_t a = std::min(last.argmin, last.argmax);
    const std::size_t b = std::max(last.argmin, last.argmax);
    v.witness = Witness{f.time(a), f.time(b), last.hi - last.lo,
                        t_last - f.time(h.quarter)};
    return v;
  }
  v.notes = "oscillation >= eps over the final half but not the final quarter";
  return v;
}

Verdict detect_limit(const SampledFunction& f, double eps) {
  return detect_limit(f, f.full_window(), eps);
}

Verdict detect_vanishes(const SampledFunction& f, const TailWindow& window,
                        double eps) {
  require_positive(eps);
  const TailHalves h = tail_halves(f, window);
  Verdict v = base_verdict(Property::vanishes, eps, window, f, h.range);
  const double slack = rounding_slack(f, h.range);
  if (max_abs(f, {h.half, h.range.last}) < eps - slack) {
    v.status = Status::holds;
    v.certificate = Certificate{eps, f.time(h.half), 0.0, 0.0};
    return v;
  }
  const std::size_t worst = argmax_abs(f, {h.quarter, h.range.last});
  if (std::abs(f.value(worst)) >= eps) {
    v.status = Status::refuted;
    v.witness = Witness{f.time(worst), f.time(worst),
                        std::abs(f.value(worst)), 0.0};
    return v;
  }
  v.notes = "|f| >= eps over the final half but not the final quarter";
  return v;
}

Verdict detect_vanishes(const SampledFunction& f, double eps) {
  return detect_vanishes(f, f.full_window(), eps);
}

Verdict detect_au(const SampledFunction& f, double eps,
                  const TailWindow& window) {
  return search_au(Property::is_au, f, eps, window, kTailQuantiles);
}

Verdict detect_au(const SampledFunction& f, double eps) {
  return detect_au(f, eps, f.full_window());
}

Verdict detect_uc(const SampledFunction& f, double eps,
                  const TailWindow& window) {
  static constexpr std::array<double, 1> kStartOnly{0.0};
  return search_au(Property::is_uc, f, eps, window, kStartOnly);
}

Verdict detect_uc(const SampledFunction& f, double eps) {
  return detect_uc(f, eps, f.full_window());
}

Verdict detect_small_on(const SampledFunction& f, const TailWindow& window,
                        double eps) {
  require_positive(eps);
  const IndexRange range = f.indices_in(window);
  Verdict v;
  v.property = Property::vanishes;
  v.epsilon = eps;
  v.window = window;
  if (range.empty()) {
    v.notes = "no grid points in window";
    return v;
  }
  v.resolution = f.max_spacing(range);
  const std::size_t worst = argmax_abs(f, range);
  const double sup = std::abs(f.value(worst));
  if (sup < eps - rounding_slack(f, range)) {
    v.status = Status::holds;
    v.certificate = Certificate{eps, window.T, 0.0, 0.0};
  } else if (sup >= eps) {
    v.status = Status::refuted;
    v.witness = Witness{f.time(worst), f.time(worst), sup, 0.0};
  } else {
    v.notes = "sup |f| within rounding slack of eps";
  }
  return v;
}

double default_bound_threshold(const SampledFunction& f,
                               const TailWindow& window) {
  const TailHalves h = tail_halves(f, window);
  std::vector<double> mags;
  mags.reserve(h.range.last - h.half);
  for (std::size_t i = h.half; i < h.range.last; ++i) {
    mags.push_back(std::abs(f.value(i)));
  }
  auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  return 1e6 * *mid;
}

Verdict detect_bounded(const SampledFunction& f, const TailWindow& window,
                       double threshold) {
  if (!(threshold >= 0.0)) {
    throw std::invalid_argument("bound threshold must be non-negative");
  }
  const TailHalves h = tail_halves(f, window);
  Verdict v = base_verdict(Property::bounded, threshold, window, f, h.range);
  const std::size_t worst = argmax_abs(f, {h.half, h.range.last});
  const double sup = std::abs(f.value(worst));
  if (sup <= threshold) {
    v.status = Status::holds;
    v.certificate = Certificate{threshold, f.time(h.half), 0.0, std::nullopt};
  } else {
    v.status = Status::refuted;
    v.witness = Witness{f.time(worst), f.time(worst), sup, 0.0};
  }
  return v;
}

}  // namespace au
