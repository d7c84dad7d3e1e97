// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "au/funcspace.hpp"

namespace au {

/// Closed-form example functions on R+ with known asymptotic behaviour.
enum class GalleryKind {
  punctured_exp,                 // 0 on integer nodes, e^{-t} elsewhere
  identity,                      // t
  sine,                          // sin t
  sine_square,                   // sin(t^2)
  exp_rational_indicator,        // e^{-t} on rational points, 0 on irrational
  damped_square_wave_primitive,  // integral of e^{-s} times a period-2 square wave
  exp_plus_nat_indicator,        // e^{-t} + 1 on integer nodes
  slow_chirp_decay,              // sin(t^2) / (1 + t)
  spike_train,                   // unit spikes of half-width w/n^2 at integers
  constant,                      // c
  exp_decay,                     // e^{-t}
  damped_sine,                   // sin t / (1 + t)
  sine_pi,                       // sin(pi t), exact zeros at integers
  abs_sine_pi,                   // |sin(pi t)|
};

/// Ground-truth flags. Only test code reads these; detectors never do.
struct GalleryLabels {
  std::optional<bool> converges;
  std::optional<double> limit;
  std::optional<bool> is_au;
  std::optional<bool> is_uc;
  std::optional<bool> continuous;
};

struct GalleryFunction {
  GalleryKind kind = GalleryKind::identity;
  std::vector<double> params;
  GalleryLabels labels;
};

std::span<const GalleryKind> all_gallery_kinds();
std::string_view gallery_name(GalleryKind kind);
std::optional<GalleryKind> parse_gallery_kind(std::string_view name);

/// Fills in default parameters and the ground-truth labels. Throws
/// std::invalid_argument on bad parameters.
GalleryFunction make_gallery(GalleryKind kind, std::vector<double> params = {});

double gallery_eval(GalleryKind kind, std::span<const double> params, double t,
                    PointTag tag = PointTag::none);
inline double gallery_eval(const GalleryFunction& g, double t,
                           PointTag tag = PointTag::none) {
  return gallery_eval(g.kind, g.params, t, tag);
}

/// True when gallery_derivative provides closed forms for every order.
bool has_derivatives(GalleryKind kind);

/// k-th derivative (k >= 1) in closed form; right derivative at the
/// integer breaks of damped_square_wave_primitive.
double gallery_derivative(GalleryKind kind, std::span<const double> params,
                          double t, int order);

enum class TagPolicy {
  integers,            // exact integers get PointTag::integer
  alternate_rational,  // as above; other points alternate rational/irrational
};

/// Uniform grid T + i*step covering [T, T_max].
SampledFunction sample(const GalleryFunction& g, const TailWindow& window,
                       double step, TagPolicy policy = TagPolicy::integers);

/// Samples the k-th derivative channel on the same grid as sample().
SampledFunction sample_derivative(const GalleryFunction& g,
                                  const TailWindow& window, double step,
                                  int order);

/// Pointwise evaluator; exact integers are treated as integer-tagged.
std::function<double(double)> gallery_evaluator(const GalleryFunction& g);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

}  // namespace au
