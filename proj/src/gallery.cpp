// SPDX-License-Identifier: Apache-2.0
#include "au/gallery.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace au {
namespace {

constexpr std::array kAllKinds{
    GalleryKind::punctured_exp,
    GalleryKind::identity,
    GalleryKind::sine,
    GalleryKind::sine_square,
    GalleryKind::exp_rational_indicator,
    GalleryKind::damped_square_wave_primitive,
    GalleryKind::exp_plus_nat_indicator,
    GalleryKind::slow_chirp_decay,
    GalleryKind::spike_train,
    GalleryKind::constant,
    GalleryKind::exp_decay,
    GalleryKind::damped_sine,
    GalleryKind::sine_pi,
    GalleryKind::abs_sine_pi,
};

struct KindName {
  GalleryKind kind;
  std::string_view name;
};

constexpr std::array kNames{
    KindName{GalleryKind::punctured_exp, "punctured_exp"},
    KindName{GalleryKind::identity, "identity"},
    KindName{GalleryKind::sine, "sine"},
    KindName{GalleryKind::sine_square, "sine_square"},
    KindName{GalleryKind::exp_rational_indicator, "exp_rational_indicator"},
    KindName{GalleryKind::damped_square_wave_primitive,
             "damped_square_wave_primitive"},
    KindName{GalleryKind::exp_plus_nat_indicator, "exp_plus_nat_indicator"},
    KindName{GalleryKind::slow_chirp_decay, "slow_chirp_decay"},
    KindName{GalleryKind::spike_train, "spike_train"},
    KindName{GalleryKind::constant, "constant"},
    KindName{GalleryKind::exp_decay, "exp_decay"},
    KindName{GalleryKind::damped_sine, "damped_sine"},
    KindName{GalleryKind::sine_pi, "sine_pi"},
    KindName{GalleryKind::abs_sine_pi, "abs_sine_pi"},
};

bool is_integer(double t) { return std::floor(t) == t; }

// h(t) = int_0^t e^{-s} q(s) ds, q = 1 on [2m, 2m+1), 0 on [2m+1, 2m+2).
double damped_square_wave_primitive(double t) {
  const double periods = std::floor(t / 2.0);
  const double start = 2.0 * periods;
  // (1 - e^{-1}) * sum_{i < periods} e^{-2i}
  double value = -std::expm1(-1.0) * -std::expm1(-2.0 * periods) /
                 -std::expm1(-2.0);
  const double r = t - start;
  if (r < 1.0) {
    value += std::exp(-start) * -std::expm1(-r);
  } else {
    value += std::exp(-start) * -std::expm1(-1.0);
  }
  return value;
}

double square_wave(double t) {
  return std::fmod(t, 2.0) < 1.0 ? 1.0 : 0.0;
}

double spike_train(double t, double w) {
  const double n = std::round(t);
  if (n < 1.0) return 0.0;
  const double half_width = w / (n * n);
  const double d = std::abs(t - n);
  if (d >= half_width) return 0.0;
  return 1.0 - d / half_width;
}

using Poly = std::vector<double>;

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * p[i];
  }
  return d;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Poly times_2t(const Poly& p, double sign) {
  Poly r(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = sign * 2.0 * p[i];
  return r;
}

double horner(const Poly& p, double t) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// d^k/dt^k sin(t^2) = P_k(t) sin(t^2) + Q_k(t) cos(t^2).
double sine_square_derivative(double t, int k) {
  Poly p{1.0};
  Poly q{0.0};
  for (int i = 0; i < k; ++i) {
    Poly np = add(derivative(p), times_2t(q, -1.0));
    Poly nq = add(derivative(q), times_2t(p, 1.0));
    p = std::move(np);
    q = std::move(nq);
  }
  const double t2 = t * t;
  return horner(p, t) * std::sin(t2) + horner(q, t) * std::cos(t2);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// d^m/dt^m (1+t)^{-1}
double reciprocal_derivative(double t, int m) {
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * fact / std::pow(1.0 + t, m + 1);
}

template <class Inner>
double over_one_plus_t(double t, int order, Inner inner) {
  double sum = 0.0;
  for (int k = 0; k <= order; ++k) {
    sum += binomial(order, k) * inner(t, k) *
           reciprocal_derivative(t, order - k);
  }
  return sum;
}

double sine_derivative(double t, int k) {
  return std::sin(t + k * std::numbers::pi / 2.0);
}

double param_or(std::span<const double> params, std::size_t i, double fallback) {
  return i < params.size() ? params[i] : fallback;
}

}  // namespace

std::span<const GalleryKind> all_gallery_kinds() { return kAllKinds; }

std::string_view gallery_name(GalleryKind kind) {
  for (const auto& entry : kNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<GalleryKind> parse_gallery_kind(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

double sin_pi(double x) {
  // Reduce to r in [-1, 1]; both steps are exact for |x| < 2^52.
  double r = x - 2.0 * std::round(x / 2.0);
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  if (r == 0.0) return 0.0;
  return std::sin(std::numbers::pi * r);
}

GalleryFunction make_gallery(GalleryKind kind, std::vector<double> params) {
  GalleryFunction g;
  g.kind = kind;
  GalleryLabels& l = g.labels;
  switch (kind) {
    case GalleryKind::punctured_exp:
    case GalleryKind::exp_rational_indicator:
      l = {true, 0.0, true, false, false};
      break;
    case GalleryKind::identity:
      l = {false, std::nullopt, true, true, true};
      break;
    case GalleryKind::sine:
    case GalleryKind::sine_pi:
    case GalleryKind::abs_sine_pi:
      l = {false, std::nullopt, true, true, true};
      break;
    case GalleryKind::sine_square:
      l = {false, std::nullopt, false, false, true};
      break;
    case GalleryKind::damped_square_wave_primitive:
      l = {true, 1.0 / (1.0 + std::exp(-1.0)), true, true, true};
      break;
    case GalleryKind::exp_plus_nat_indicator:
      l = {false, std::nullopt, false, false, false};
      break;
    case GalleryKind::slow_chirp_decay:
    case GalleryKind::exp_decay:
    case GalleryKind::damped_sine:
      l = {true, 0.0, true, true, true};
      break;
    case GalleryKind::spike_train: {
      if (params.empty()) params.push_back(1.0);
      if (!(params[0] > 0.0) || !std::isfinite(params[0])) {
        throw std::invalid_argument("spike_train width must be positive");
      }
      l = {false, std::nullopt, false, false, true};
      break;
    }
    case GalleryKind::constant: {
      if (params.empty()) params.push_back(1.0);
      if (!std::isfinite(params[0])) {
        throw std::invalid_argument("constant value must be finite");
      }
      l = {true, params[0], true, true, true};
      break;
    }
  }
  g.params = std::move(params);
  return g;
}

double gallery_eval(GalleryKind kind, std::span<const double> params, double t,
                    PointTag tag) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("gallery functions are defined for t >= 0");
  }
  switch (kind) {
    case GalleryKind::punctured_exp:
      return tag == PointTag::integer ? 0.0 : std::exp(-t);
    case GalleryKind::identity:
      return t;
    case GalleryKind::sine:
      return std::sin(t);
    case GalleryKind::sine_square:
      return std::sin(t * t);
    case GalleryKind::exp_rational_indicator:
      // Untagged points are treated as irrational (a generic real).
      return (tag == PointTag::rational || tag == PointTag::integer)
                 ? std::exp(-t)
                 : 0.0;
    case GalleryKind::damped_square_wave_primitive:
      return damped_square_wave_primitive(t);
    case GalleryKind::exp_plus_nat_indicator:
      return std::exp(-t) + (tag == PointTag::integer ? 1.0 : 0.0);
    case GalleryKind::slow_chirp_decay:
      return std::sin(t * t) / (1.0 + t);
    case GalleryKind::spike_train:
      return spike_train(t, param_or(params, 0, 1.0));
    case GalleryKind::constant:
      return param_or(params, 0, 1.0);
    case GalleryKind::exp_decay:
      return std::exp(-t);
    case GalleryKind::damped_sine:
      return std::sin(t) / (1.0 + t);
    case GalleryKind::sine_pi:
      return sin_pi(t);
    case GalleryKind::abs_sine_pi:
      return std::abs(sin_pi(t));
  }
  throw std::invalid_argument("unknown gallery kind");
}

bool has_derivatives(GalleryKind kind) {
  switch (kind) {
    case GalleryKind::identity:
    case GalleryKind::sine:
    case GalleryKind::sine_square:
    case GalleryKind::damped_square_wave_primitive:
    case GalleryKind::slow_chirp_decay:
    case GalleryKind::constant:
    case GalleryKind::exp_decay:
    case GalleryKind::damped_sine:
    case GalleryKind::sine_pi:
      return true;
    default:
      return false;
  }
}

double gallery_derivative(GalleryKind kind, std::span<const double> /*params*/,
                          double t, int order) {
  if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
  if (!(t >= 0.0)) {
    throw std::invalid_argument("gallery functions are defined for t >= 0");
  }
  const double sign = (order % 2 == 0) ? 1.0 : -1.0;
  switch (kind) {
    case GalleryKind::identity:
      return order == 1 ? 1.0 : 0.0;
    case GalleryKind::constant:
      return 0.0;
    case GalleryKind::sine:
      return sine_derivative(t, order);
    case GalleryKind::sine_pi:
      return std::pow(std::numbers::pi, order) *
             std::sin(std::numbers::pi * t + order * std::numbers::pi / 2.0);
    case GalleryKind::exp_decay:
      return sign * std::exp(-t);
    case GalleryKind::sine_square:
      return sine_square_derivative(t, order);
    case GalleryKind::slow_chirp_decay:
      return over_one_plus_t(t, order, sine_square_derivative);
    case GalleryKind::damped_sine:
      return over_one_plus_t(t, order, sine_derivative);
    case GalleryKind::damped_square_wave_primitive:
      // h' = e^{-t} q(t); further derivatives act on e^{-t} only.
      return -sign * std::exp(-t) * square_wave(t);
    default:
      throw std::invalid_argument(std::string(gallery_name(kind)) +
                                  " has no closed-form derivative");
  }
}

namespace {

std::vector<double> grid_times(const TailWindow& window, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("sampling step must be positive");
  }
  const double count = std::floor(window.span() / step + 1e-9) + 1.0;
  if (count < 2.0) {
    throw std::invalid_argument("sampling yields fewer than 2 points");
  }
  if (count > 1e9) throw std::invalid_argument("sampling grid too large");
  std::vector<double> times(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = window.T + static_cast<double>(i) * step;
  }
  return times;
}

}  // namespace

SampledFunction sample(const GalleryFunction& g, const TailWindow& window,
                       double step, TagPolicy policy) {
  std::vector<double> times = grid_times(window, step);
  std::vector<PointTag> tags(times.size(), PointTag::none);
  std::vector<double> values(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (is_integer(times[i])) {
      tags[i] = PointTag::integer;
    } else if (policy == TagPolicy::alternate_rational) {
      tags[i] = (i % 2 == 0) ? PointTag::rational : PointTag::irrational;
    }
    values[i] = gallery_eval(g, times[i], tags[i]);
  }
  return SampledFunction(std::move(times), std::move(values), std::move(tags));
}

SampledFunction sample_derivative(const GalleryFunction& g,
                                  const TailWindow& window, double step,
                                  int order) {
  std::vector<double> times = grid_times(window, step);
  std::vector<PointTag> tags(times.size(), PointTag::none);
  std::vector<double> values(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (is_integer(times[i])) tags[i] = PointTag::integer;
    values[i] = gallery_derivative(g.kind, g.params, times[i], order);
  }
  return SampledFunction(std::move(times), std::move(values), std::move(tags));
}

std::function<double(double)> gallery_evaluator(const GalleryFunction& g) {
  return [g](double t) {
    return gallery_eval(g, t,
                        is_integer(t) ? PointTag::integer : PointTag::none);
  };
}

}  // namespace au
