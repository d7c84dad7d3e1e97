// SPDX-License-Identifier: Apache-2.0
#include "au/verdict.hpp"

#include <cmath>

#include "au/modulus.hpp"

namespace au {

std::string_view to_string(Property p) {
  switch (p) {
    case Property::limit_exists: return "limit_exists";
    case Property::vanishes: return "vanishes";
    case Property::is_au: return "is_au";
    case Property::is_uc: return "is_uc";
    case Property::condition_C: return "condition_C";
    case Property::condition_Cstar: return "condition_Cstar";
    case Property::bounded: return "bounded";
    case Property::channel_consistent: return "channel_consistent";
  }
  return "unknown";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds: return "Holds";
    case Status::refuted: return "Refuted";
    case Status::inconclusive: return "Inconclusive";
  }
  return "unknown";
}

namespace {

bool recheck_certificate(const Verdict& v, const SampledFunction& f) {
  if (!v.certificate) return false;
  const Certificate& c = *v.certificate;
  switch (v.property) {
    case Property::is_au:
    case Property::is_uc:
    case Property::limit_exists:
      return tail_modulus(f, TailWindow(c.T, v.window.T_max), c.delta) <
             c.epsilon;
    case Property::vanishes:
    case Property::bounded: {
      IndexRange r = f.indices_in(TailWindow(c.T, v.window.T_max));
      if (r.empty()) return false;
      return max_abs(f, r) < c.epsilon ||
             (v.property == Property::bounded && max_abs(f, r) <= c.epsilon);
    }
    default:
      return true;
  }
}

bool recheck_witness(const Verdict& v, const SampledFunction& f) {
  if (!v.witness) return false;
  const Witness& w = *v.witness;
  auto is = f.index_of(w.s);
  auto it = f.index_of(w.t);
  if (!is || !it) return false;
  if (w.s < v.window.T || w.t > v.window.T_max) return false;
  switch (v.property) {
    case Property::vanishes:
      return std::abs(f.value(*it)) >= v.epsilon;
    case Property::bounded:
      return std::abs(f.value(*it)) > v.epsilon;
    case Property::is_au:
    case Property::is_uc:
    case Property::limit_exists:
      return std::abs(w.t - w.s) <= w.delta &&
             std::abs(f.value(*it) - f.value(*is)) >= v.epsilon;
    default:
      return true;
  }
}

}  // namespace

bool recheck(const Verdict& v, const SampledFunction& f) {
  switch (v.status) {
    case Status::holds:
      return recheck_certificate(v, f);
    case Status::refuted:
      return recheck_witness(v, f);
    case Status::inconclusive:
      return true;
  }
  return false;
}

}  // namespace au
