// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "au/funcspace.hpp"

namespace au {

enum class Property {
  limit_exists,
  vanishes,
  is_au,
  is_uc,
  condition_C,
  condition_Cstar,
  bounded,
  channel_consistent,
};

enum class Status { holds, refuted, inconclusive };

std::string_view to_string(Property p);
std::string_view to_string(Status s);

/// (epsilon, T, delta) triple; for limit_exists delta is the tail length so
/// the tail modulus at delta equals the tail oscillation.
struct Certificate {
  double epsilon = 0.0;
  double T = 0.0;
  double delta = 0.0;
  std::optional<double> limit_estimate;
};

/// Pair (s, t) with |f(t) - f(s)| = gap. For vanishes and bounded s == t and
/// gap is |f(t)|.
struct Witness {
  double s = 0.0;
  double t = 0.0;
  double gap = 0.0;
  double delta = 0.0;
};

struct Verdict {
  Property property = Property::is_au;
  Status status = Status::inconclusive;
  double epsilon = 0.0;
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
  TailWindow window;
  double resolution = 0.0;  // largest grid spacing in the window
  std::string subject;      // channel name, when known
  std::string notes;

  bool holds() const noexcept { return status == Status::holds; }
  bool refuted() const noexcept { return status == Status::refuted; }
};

/// Re-derives a verdict's certificate or witness from the samples.
/// Returns true when the stored evidence checks out (and for Inconclusive).
bool recheck(const Verdict& v, const SampledFunction& f);

}  // namespace au
