// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace au {

/// Membership marker attached to a grid point. Whether a floating time is an
/// integer or a rational cannot be decided from its bits alone, so the marker
/// is assigned when the grid is built and travels with the samples.
enum class PointTag { none, integer, rational, irrational };

/// Finite observation window [T, T_max] standing in for "all s, t >= T".
struct TailWindow {
  double T = 0.0;
  double T_max = 0.0;

  TailWindow() = default;
  TailWindow(double start, double end);

  double span() const noexcept { return T_max - T; }
};

/// Half-open range of sample indices.
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const noexcept { return last - first; }
  bool empty() const noexcept { return last <= first; }
};

/// Strictly increasing time grid with finite values and per-point tags.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> times, std::vector<double> values,
                  std::vector<PointTag> tags = {});

  std::size_t size() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const PointTag> tags() const noexcept { return tags_; }

  double time(std::size_t i) const { return times_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  PointTag tag(std::size_t i) const { return tags_[i]; }

  double front_time() const noexcept { return times_.front(); }
  double back_time() const noexcept { return times_.back(); }

  /// Whole grid as a window. Throws if the grid starts before 0.
  TailWindow full_window() const;

  /// Indices of the points with T <= t <= T_max.
  IndexRange indices_in(const TailWindow& window) const;

  /// Index of the first point with t >= x (size() if none).
  std::size_t lower_index(double x) const;

  /// Exact lookup of a grid time.
  std::optional<std::size_t> index_of(double t) const;

  /// Largest gap between consecutive points of the range.
  double max_spacing(IndexRange range) const;
  double min_spacing(IndexRange range) const;

  bool same_grid(const SampledFunction& other) const noexcept;

  /// Same grid and tags, new values.
  SampledFunction with_values(std::vector<double> values) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<PointTag> tags_;
};

/// Outer maps known to be uniformly continuous on all of R.
struct UcOuter {
  enum class Kind { identity, sine, absolute, clamp };
  Kind kind = Kind::identity;
  double lo = -1.0;  // clamp bounds
  double hi = 1.0;

  double operator()(double x) const;
  /// Modulus of continuity of the map: sup |g(x)-g(y)| over |x-y| <= d.
  double modulus(double d) const;
};

namespace combine_op {
struct Sum {};
struct Scale {
  double c = 1.0;
};
struct ComposeUc {
  UcOuter outer;
};
}  // namespace combine_op

using CombineOp =
    std::variant<combine_op::Sum, combine_op::Scale, combine_op::ComposeUc>;

/// Pointwise combination on a shared grid; tags are preserved. `g` is
/// required for Sum and ignored otherwise.
SampledFunction combine(const CombineOp& op, const SampledFunction& f,
                        const SampledFunction* g = nullptr);

/// Largest |value| over the range (0 for an empty range).
double max_abs(const SampledFunction& f, IndexRange range);

}  // namespace au
