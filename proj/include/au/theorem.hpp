// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "au/funcspace.hpp"
#include "au/verdict.hpp"

namespace au {

enum class TheoremCase {
  differential,
  integral,
  hadamard,
  higher_order,
  hardy_littlewood,
};

std::string_view to_string(TheoremCase c);
std::optional<TheoremCase> parse_theorem_case(std::string_view name);

/// Extra channels keyed by name: "df", "d2f", "d3f", ... for derivatives,
/// "g" for an integrand or growth function, "h" for a second growth function.
using Channels = std::map<std::string, SampledFunction, std::less<>>;

/// "df" for k = 1, "d<k>f" otherwise.
std::string derivative_channel_name(int k);

/// One direction of a theorem, evaluated on the data.
struct Implication {
  std::string statement;
  std::vector<Verdict> hypotheses;
  std::vector<Verdict> conclusions;
  bool consistent = true;  // false only for: every hypothesis Holds, a conclusion Refuted
};

struct TheoremReport {
  TheoremCase theorem_case = TheoremCase::differential;
  std::vector<Implication> implications;
  std::vector<Verdict> observations;  // context verdicts outside any implication
  std::vector<std::string> derived_channels;
  bool consistent = true;
  std::string detail;

  std::vector<Verdict> hypothesis_verdicts() const;
  std::vector<Verdict> conclusion_verdicts() const;
};

struct TheoremOptions {
  int order = 2;                // derivative order for hadamard / higher_order
  bool derive_missing = true;   // central differences for absent derivative channels
  std::optional<double> bound_threshold;  // hadamard boundedness threshold
};

/// Evaluates every direction of the chosen theorem on f and its channels.
///
/// Each direction is checked as the quantitative statement its proof
/// establishes on the window: hypotheses about f are tested at the tolerance
/// the proof needs for the conclusion to hold at eps (for instance f must
/// settle within eps*d/8 when the derivative carries an a.u. certificate
/// with pair distance d). A direction is inconsistent only when every
/// hypothesis Holds while a conclusion is Refuted.
///
/// Throws au::GridMismatch for channels on another grid and au::Error for a
/// missing channel when derive_missing is false.
TheoremReport check_theorem(TheoremCase theorem_case, const SampledFunction& f,
                            const Channels& channels, double eps,
                            const TheoremOptions& options = {});

/// Central differences, one-sided at the ends.
SampledFunction central_difference(const SampledFunction& f);

/// Running trapezoid integral from the first grid point (starts at 0).
SampledFunction cumulative_trapezoid(const SampledFunction& g);

struct HlPoint {
  double T = 0.0;
  double sup_ratio = 0.0;
};

/// Tail sups of |df| / sqrt(g h) over [T, T_max] for each T of the ladder.
/// g and h must be positive and nondecreasing on the grid.
std::vector<HlPoint> hl_ratio_profile(const SampledFunction& f,
                                      const SampledFunction& df,
                                      const SampledFunction& g,
                                      const SampledFunction& h,
                                      std::span<const double> T_ladder);

/// Absolute row sums of the inverse Vandermonde matrix on nodes 0..n-1:
/// w_sum = sum_j |w_kj|, v_sum = sum_j |w_kj| j^n.
struct StencilConstants {
  double w_sum = 0.0;
  double v_sum = 0.0;
};
StencilConstants stencil_constants(int n, int k);

/// Bound on |f^(k)| at any point with an n-node stencil of spacing d in
/// [d_min, d_max] inside a stretch where f oscillates by at most `osc` and
/// |f^(n)| <= top:
///   min_d  k! w_sum osc / (2 d^k) + k! v_sum top d^(n-k) / n!
/// Returns +inf when d_min > d_max.
double derivative_bound(int n, int k, double osc, double top, double d_min,
                        double d_max);

}  // namespace au
