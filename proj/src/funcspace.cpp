// SPDX-License-Identifier: Apache-2.0
#include "au/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "au/error.hpp"

namespace au {

TailWindow::TailWindow(double start, double end) : T(start), T_max(end) {
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw std::invalid_argument("window bounds must be finite");
  }
  if (start < 0.0 || !(start < end)) {
    throw std::invalid_argument("window requires 0 <= T < T_max");
  }
}

SampledFunction::SampledFunction(std::vector<double> times,
                                 std::vector<double> values,
                                 std::vector<PointTag> tags)
    : times_(std::move(times)),
      values_(std::move(values)),
      tags_(std::move(tags)) {
  if (times_.size() != values_.size()) {
    throw std::invalid_argument("times and values differ in length");
  }
  if (times_.size() < 2) {
    throw std::invalid_argument("a sampled function needs at least 2 points");
  }
  if (tags_.empty()) {
    tags_.assign(times_.size(), PointTag::none);
  } else if (tags_.size() != times_.size()) {
    throw std::invalid_argument("tags and times differ in length");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) {
      throw std::invalid_argument("non-finite time at index " +
                                  std::to_string(i));
    }
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite value at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(times_[i - 1] < times_[i])) {
      throw std::invalid_argument("times not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
}

TailWindow SampledFunction::full_window() const {
  return TailWindow(times_.front(), times_.back());
}

IndexRange SampledFunction::indices_in(const TailWindow& window) const {
  auto first = std::lower_bound(times_.begin(), times_.end(), window.T);
  auto last = std::upper_bound(first, times_.end(), window.T_max);
  return {static_cast<std::size_t>(first - times_.begin()),
          static_cast<std::size_t>(last - times_.begin())};
}

std::size_t SampledFunction::lower_index(double x) const {
  return static_cast<std::size_t>(
      std::lower_bound(times_.begin(), times_.end(), x) - times_.begin());
}

std::optional<std::size_t> SampledFunction::index_of(double t) const {
  std::size_t i = lower_index(t);
  if (i < times_.size() && times_[i] == t) return i;
  return std::nullopt;
}

double SampledFunction::max_spacing(IndexRange range) const {
  double gap = 0.0;
  for (std::size_t i = range.first + 1; i < range.last; ++i) {
    gap = std::max(gap, times_[i] - times_[i - 1]);
  }
  return gap;
}

double SampledFunction::min_spacing(IndexRange range) const {
  if (range.size() < 2) return 0.0;
  double gap = times_[range.first + 1] - times_[range.first];
  for (std::size_t i = range.first + 2; i < range.last; ++i) {
    gap = std::min(gap, times_[i] - times_[i - 1]);
  }
  return gap;
}

bool SampledFunction::same_grid(const SampledFunction& other) const noexcept {
  return times_ == other.times_;
}

SampledFunction SampledFunction::with_values(std::vector<double> values) const {
  return SampledFunction(times_, std::move(values), tags_);
}

double UcOuter::operator()(double x) const {
  switch (kind) {
    case Kind::identity:
      return x;
    case Kind::sine:
      return std::sin(x);
    case Kind::absolute:
      return std::abs(x);
    case Kind::clamp:
      return std::clamp(x, lo, hi);
  }
  return x;
}

double UcOuter::modulus(double d) const {
  switch (kind) {
    case Kind::sine:
      return std::min(d, 2.0);
    case Kind::clamp:
      return std::min(d, hi - lo);
    case Kind::identity:
    case Kind::absolute:
      return d;
  }
  return d;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

SampledFunction combine(const CombineOp& op, const SampledFunction& f,
                        const SampledFunction* g) {
  std::vector<double> out(f.size());
  auto values = f.values();
  std::visit(
      Overloaded{
          [&](const combine_op::Sum&) {
            if (g == nullptr) {
              throw std::invalid_argument("sum needs a second function");
            }
            if (!f.same_grid(*g)) {
              throw GridMismatch("sum of functions on different grids");
            }
            auto other = g->values();
            for (std::size_t i = 0; i < out.size(); ++i) {
              out[i] = values[i] + other[i];
            }
          },
          [&](const combine_op::Scale& s) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.c * values[i];
          },
          [&](const combine_op::ComposeUc& c) {
            for (std::size_t i = 0; i < out.size(); ++i) {
              out[i] = c.outer(values[i]);
            }
          },
      },
      op);
  return f.with_values(std::move(out));
}

double max_abs(const SampledFunction& f, IndexRange range) {
  double m = 0.0;
  for (std::size_t i = range.first; i < range.last; ++i) {
    m = std::max(m, std::abs(f.value(i)));
  }
  return m;
}

}  // namespace au
