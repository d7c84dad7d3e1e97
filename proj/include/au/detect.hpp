// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "au/funcspace.hpp"
#include "au/verdict.hpp"

namespace au {

/// Candidate tail starts, as fractions of the window span.
inline constexpr std::array<double, 5> kTailQuantiles{0.0, 0.25, 0.5, 0.75, 0.9};

/// Geometric ladder span/10 * 2^-k, k = 0..K, with the last rung >= 2*step.
/// Empty when even the first rung is below 2*step.
std::vector<double> delta_ladder(double span, double step);

/// Absorbs rounding in strict "< eps" tests: 1e-12 * max |f| over the range.
double rounding_slack(const SampledFunction& f, IndexRange range);

/// Cauchy tail test on the final half of the window.
///   Holds        oscillation over the final half < eps
///   Refuted      oscillation over the final quarter >= eps
///   Inconclusive otherwise (the tail is still settling)
/// Throws std::invalid_argument if the final half holds fewer than 3 points.
Verdict detect_limit(const SampledFunction& f, const TailWindow& window,
                     double eps);
Verdict detect_limit(const SampledFunction& f, double eps);

/// Like detect_limit, but for |f| itself: sup over the final half < eps.
Verdict detect_vanishes(const SampledFunction& f, const TailWindow& window,
                        double eps);
Verdict detect_vanishes(const SampledFunction& f, double eps);

/// Searches T over kTailQuantiles and delta over delta_ladder (largest
/// first) for tail_modulus < eps - slack. Refuted when even the latest tail
/// and the finest delta give a modulus >= eps.
Verdict detect_au(const SampledFunction& f, double eps,
                  const TailWindow& window);
Verdict detect_au(const SampledFunction& f, double eps);

/// detect_au with T pinned to the window start.
Verdict detect_uc(const SampledFunction& f, double eps,
                  const TailWindow& window);
Verdict detect_uc(const SampledFunction& f, double eps);

/// sup |f| over every grid point of the window against eps.
Verdict detect_small_on(const SampledFunction& f, const TailWindow& window,
                        double eps);

/// sup |f| over the final half against a fixed threshold (<= holds).
Verdict detect_bounded(const SampledFunction& f, const TailWindow& window,
                       double threshold);

/// 1e6 * median |f| over the final half of the window.
double default_bound_threshold(const SampledFunction& f,
                               const TailWindow& window);

/// Index of the first point at or after window.T + fraction * span, where
/// span is measured between the first and last grid points of the window.
std::size_t tail_start(const SampledFunction& f, IndexRange range,
                       double fraction);

}  // namespace au
