// SPDX-License-Identifier: Apache-2.0
#include "au/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace au {
namespace {

// Fixed-capacity index queue; each index is pushed and popped at most once.
class IndexQueue {
 public:
  explicit IndexQueue(std::size_t capacity) : slots_(capacity) {}

  bool empty() const noexcept { return head_ == tail_; }
  std::size_t front() const { return slots_[head_]; }
  std::size_t back() const { return slots_[tail_ - 1]; }
  void push_back(std::size_t i) { slots_[tail_++] = i; }
  void pop_back() { --tail_; }
  void pop_front() { ++head_; }

 private:
  std::vector<std::size_t> slots_;
  std::size_t head_ = 0;
  std::size_t tail_ = 0;
};

}  // namespace

ModulusResult range_modulus(std::span<const double> times,
                            std::span<const double> values, IndexRange range,
                            double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (range.size() < 2) {
    throw std::invalid_argument("window holds fewer than 2 grid points");
  }

  ModulusResult out;
  out.s_index = out.t_index = range.first;
  out.min_spacing = times[range.first + 1] - times[range.first];
  for (std::size_t i = range.first + 1; i < range.last; ++i) {
    const double gap = times[i] - times[i - 1];
    out.min_spacing = std::min(out.min_spacing, gap);
    out.max_spacing = std::max(out.max_spacing, gap);
  }
  out.aliased = delta < out.min_spacing;

  IndexQueue maxq(range.size());
  IndexQueue minq(range.size());
  std::size_t left = range.first;
  for (std::size_t right = range.first; right < range.last; ++right) {
    const double v = values[right];
    while (!maxq.empty() && values[maxq.back()] <= v) maxq.pop_back();
    maxq.push_back(right);
    while (!minq.empty() && values[minq.back()] >= v) minq.pop_back();
    minq.push_back(right);

    while (times[right] - times[left] > delta) ++left;
    while (maxq.front() < left) maxq.pop_front();
    while (minq.front() < left) minq.pop_front();

    const double spread = values[maxq.front()] - values[minq.front()];
    if (spread > out.omega) {
      out.omega = spread;
      out.s_index = std::min(maxq.front(), minq.front());
      out.t_index = std::max(maxq.front(), minq.front());
    }
  }
  return out;
}

ModulusResult tail_modulus_detail(const SampledFunction& f,
                                  const TailWindow& window, double delta) {
  return range_modulus(f.times(), f.values(), f.indices_in(window), delta);
}

double tail_modulus(const SampledFunction& f, const TailWindow& window,
                    double delta) {
  return tail_modulus_detail(f, window, delta).omega;
}

ModulusTable modulus_profile(const SampledFunction& f, const TailWindow& window,
                             std::span<const double> deltas) {
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) {
      throw std::invalid_argument("deltas must be positive");
    }
    if (i > 0 && deltas[i] < deltas[i - 1]) {
      throw std::invalid_argument("deltas must be ascending");
    }
  }
  ModulusTable table;
  table.window = window;
  table.entries.reserve(deltas.size());
  for (double d : deltas) {
    ModulusResult r = tail_modulus_detail(f, window, d);
    table.min_spacing = r.min_spacing;
    table.max_spacing = r.max_spacing;
    table.entries.push_back({d, r.omega, r.aliased});
  }
  if (deltas.empty()) {
    IndexRange range = f.indices_in(window);
    if (range.size() < 2) {
      throw std::invalid_argument("window holds fewer than 2 grid points");
    }
    table.min_spacing = f.min_spacing(range);
    table.max_spacing = f.max_spacing(range);
  }
  return table;
}

}  // namespace au
