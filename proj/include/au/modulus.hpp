// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "au/funcspace.hpp"

namespace au {

/// Tail modulus of continuity together with the pair that attains it.
struct ModulusResult {
  double omega = 0.0;
  std::size_t s_index = 0;  // attaining pair, s_index <= t_index
  std::size_t t_index = 0;
  double min_spacing = 0.0;  // grid resolution inside the window
  double max_spacing = 0.0;
  bool aliased = false;  // delta below the finest spacing: omega is 0 by construction
};

/// sup |f(t) - f(s)| over grid pairs in the window with t - s <= delta.
///
/// Runs in time linear in the number of window points: a two-pointer span
/// of width delta slides over the grid while two monotone index queues
/// track the running max and min. The result is bit-identical to the
/// quadratic scan over all pairs because max - min over a span is itself
/// one of the pair differences.
ModulusResult tail_modulus_detail(const SampledFunction& f,
                                  const TailWindow& window, double delta);

double tail_modulus(const SampledFunction& f, const TailWindow& window,
                    double delta);

/// Same kernel over an explicit index range.
ModulusResult range_modulus(std::span<const double> times,
                            std::span<const double> values, IndexRange range,
                            double delta);

struct ModulusEntry {
  double delta = 0.0;
  double omega = 0.0;
  bool aliased = false;
};

struct ModulusTable {
  TailWindow window;
  double min_spacing = 0.0;
  double max_spacing = 0.0;
  std::vector<ModulusEntry> entries;
};

/// One tail_modulus per delta; deltas must be positive and ascending.
ModulusTable modulus_profile(const SampledFunction& f, const TailWindow& window,
                             std::span<const double> deltas);

}  // namespace au
