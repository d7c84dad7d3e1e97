// SPDX-License-Identifier: Apache-2.0
#include "au/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "au/detect.hpp"
#include "au/error.hpp"

namespace au {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pair distance used by the channel-consistency probes, in grid steps.
constexpr double kProbeSteps = 8.0;

struct Layout {
  TailWindow window;
  IndexRange range;
  std::size_t half = 0;
  double t_last = 0.0;
  double step = 0.0;
};

Layout layout_of(const SampledFunction& f) {
  Layout l;
  l.window = f.full_window();
  l.range = f.indices_in(l.window);
  l.half = tail_start(f, l.range, 0.5);
  l.t_last = f.back_time();
  l.step = f.max_spacing(l.range);
  if (l.range.last - l.half < 3) {
    throw std::invalid_argument("window too short for theorem checks");
  }
  return l;
}

Verdict named(Verdict v, std::string subject) {
  v.subject = std::move(subject);
  return v;
}

Verdict inconclusive(Property p, double eps, const TailWindow& w,
                     std::string subject, std::string note) {
  Verdict v;
  v.property = p;
  v.epsilon = eps;
  v.window = w;
  v.subject = std::move(subject);
  v.notes = std::move(note);
  return v;
}

Implication implication(std::string statement, std::vector<Verdict> hyps,
                        std::vector<Verdict> concls) {
  Implication imp{std::move(statement), std::move(hyps), std::move(concls),
                  true};
  const bool all_hold =
      std::all_of(imp.hypotheses.begin(), imp.hypotheses.end(),
                  [](const Verdict& v) { return v.holds(); });
  const bool any_refuted =
      std::any_of(imp.conclusions.begin(), imp.conclusions.end(),
                  [](const Verdict& v) { return v.refuted(); });
  imp.consistent = !(all_hold && any_refuted);
  return imp;
}

// max over starts i of |(F_j - F_i) - (C_j - C_i)|, j the farthest point with
// t_j - t_i <= delta; C is the running trapezoid integral of F's derivative.
struct PairResidual {
  double value = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  double min_distance = kInf;
  std::size_t pairs = 0;
};

PairResidual pair_residual(const SampledFunction& F, const SampledFunction& C,
                           IndexRange starts, std::size_t limit, double delta) {
  PairResidual r;
  std::size_t j = starts.first;
  for (std::size_t i = starts.first; i < starts.last; ++i) {
    j = std::max(j, i);
    while (j + 1 < limit && F.time(j + 1) - F.time(i) <= delta) ++j;
    if (j == i) continue;
    const double res =
        std::abs((F.value(j) - F.value(i)) - (C.value(j) - C.value(i)));
    if (res > r.value || r.pairs == 0) {
      r.value = res;
      r.i = i;
      r.j = j;
    }
    r.min_distance = std::min(r.min_distance, F.time(j) - F.time(i));
    ++r.pairs;
  }
  return r;
}

Verdict consistency_verdict(const PairResidual& r, double tau,
                            const SampledFunction& F, const TailWindow& w,
                            double delta, std::string subject) {
  Verdict v;
  v.property = Property::channel_consistent;
  v.epsilon = tau;
  v.window = w;
  v.subject = std::move(subject);
  if (r.pairs == 0) {
    v.notes = "no probe pairs in window";
    return v;
  }
  if (r.value < tau) {
    v.status = Status::holds;
    v.certificate = Certificate{tau, w.T, delta, std::nullopt};
  } else {
    v.status = Status::refuted;
    v.witness = Witness{F.time(r.i), F.time(r.j), r.value, delta};
  }
  return v;
}

// Channel-consistency probe at a fixed short distance over the final half.
Verdict probe_consistency(const SampledFunction& F, const SampledFunction& dF,
                          const Layout& l, double eps, const std::string& name) {
  const double probe = kProbeSteps * l.step;
  const SampledFunction C = cumulative_trapezoid(dF);
  const PairResidual r =
      pair_residual(F, C, {l.half, l.range.last}, l.range.last, probe);
  return consistency_verdict(r, eps * probe / 8.0, F,
                             TailWindow(F.time(l.half), l.t_last), probe, name);
}

// Largest tolerance accepted by a monotone feasibility test (0 if none).
double max_tolerance(const std::function<bool(double)>& feasible,
                     double start) {
  if (!feasible(0.0)) return 0.0;
  double hi = start;
  for (int guard = 0; feasible(hi); ++guard) {
    if (guard > 2000 || !std::isfinite(hi * 2.0)) return hi;
    hi *= 2.0;
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

Verdict settle_verdict(const SampledFunction& f, const Layout& l, double tol,
                       const std::string& name) {
  if (!(tol > 0.0)) {
    return inconclusive(Property::limit_exists, 0.0, l.window, name,
                        "no positive tolerance makes the bound reach eps at "
                        "this resolution");
  }
  Verdict v = named(detect_limit(f, l.window, tol), name);
  v.notes += (v.notes.empty() ? "" : "; ") +
             std::string("tolerance derived from the conclusion bound");
  return v;
}

double sup_abs_final_half(const SampledFunction& F, const Layout& l) {
  return max_abs(F, {l.half, l.range.last});
}

struct Derivatives {
  std::vector<SampledFunction> chain;  // chain[k] = k-th derivative, chain[0] = f
  std::vector<std::string> names;
  std::vector<std::string> derived;
};

const SampledFunction* find_channel(const Channels& channels,
                                    std::string_view name) {
  auto it = channels.find(name);
  return it == channels.end() ? nullptr : &it->second;
}

Derivatives resolve_derivatives(const SampledFunction& f,
                                const Channels& channels, int n, bool derive) {
  Derivatives d;
  d.chain.push_back(f);
  d.names.push_back("f");
  for (int k = 1; k <= n; ++k) {
    const std::string name = derivative_channel_name(k);
    if (const SampledFunction* ch = find_channel(channels, name)) {
      d.chain.push_back(*ch);
    } else if (derive) {
      d.chain.push_back(central_difference(d.chain.back()));
      d.derived.push_back(name);
    } else {
      throw Error("missing channel " + name);
    }
    d.names.push_back(name);
  }
  return d;
}

// Window of conclusion points whose forward pair at distance delta stays
// inside the certified tail.
struct PairWindow {
  std::optional<TailWindow> window;
  IndexRange starts;
  double min_distance = 0.0;
};

PairWindow pair_window(const SampledFunction& f, const Layout& l,
                       const Certificate& cert) {
  PairWindow p;
  const double start = std::max(cert.T, f.time(l.half));
  const double end = l.t_last - cert.delta;
  if (!(end > start)) return p;
  p.window = TailWindow(start, end);
  p.starts = f.indices_in(*p.window);
  if (p.starts.empty()) {
    p.window.reset();
    return p;
  }
  p.min_distance = kInf;
  std::size_t j = p.starts.first;
  for (std::size_t i = p.starts.first; i < p.starts.last; ++i) {
    j = std::max(j, i);
    while (j + 1 < l.range.last && f.time(j + 1) - f.time(i) <= cert.delta) ++j;
    p.min_distance = std::min(p.min_distance, f.time(j) - f.time(i));
  }
  if (!(p.min_distance > 0.0)) p.window.reset();
  return p;
}

// The first-order argument shared by the differential and integral cases and
// by the top step of higher_order: with |dF(s) - dF(t)| < eps/2 on pairs at
// distance <= delta past T, and F settled within `settle`, the trapezoid
// identity gives |dF(t)| < eps/2 + (settle + residual) / d.
struct FirstOrderStep {
  Verdict residual;
  Verdict conclusion;
  double min_distance = 0.0;
  bool available = false;
};

FirstOrderStep first_order_step(const SampledFunction& F,
                                const SampledFunction& dF, const Layout& l,
                                const Certificate& cert, double eps,
                                const std::string& F_name,
                                const std::string& dF_name) {
  FirstOrderStep s;
  PairWindow pw = pair_window(F, l, cert);
  if (!pw.window) return s;
  s.available = true;
  s.min_distance = pw.min_distance;
  const SampledFunction C = cumulative_trapezoid(dF);
  const PairResidual r =
      pair_residual(F, C, pw.starts, l.range.last, cert.delta);
  s.residual = consistency_verdict(r, eps * pw.min_distance / 8.0, F,
                                   *pw.window, cert.delta,
                                   F_name + "~" + dF_name);
  s.conclusion = named(detect_small_on(dF, *pw.window, eps), dF_name);
  return s;
}

std::vector<Implication> first_order_implications(
    const SampledFunction& F, const SampledFunction& dF, const Layout& l,
    double eps, const std::string& F_name, const std::string& dF_name,
    const std::string& F_converges) {
  std::vector<Implication> out;
  const Verdict plain = named(detect_limit(F, l.window, eps), F_name);

  struct Route {
    Verdict regularity;
    std::string label;
  };
  const Route routes[] = {
      {named(detect_au(dF, eps / 2.0, l.window), dF_name), "a.u."},
      {named(detect_uc(dF, eps / 2.0, l.window), dF_name),
       "uniformly continuous"},
  };
  for (const Route& route : routes) {
    const std::string statement =
        F_converges + " and " + dF_name + " " + route.label + " => " +
        dF_name + " -> 0";
    if (route.regularity.holds()) {
      FirstOrderStep step = first_order_step(F, dF, l, *route.regularity.certificate,
                                             eps, F_name, dF_name);
      if (step.available) {
        Verdict settle =
            settle_verdict(F, l, eps * step.min_distance / 8.0, F_name);
        out.push_back(implication(statement,
                                  {settle, route.regularity, step.residual},
                                  {step.conclusion}));
        continue;
      }
    }
    out.push_back(implication(
        statement, {plain, route.regularity},
        {named(detect_vanishes(dF, l.window, eps), dF_name)}));
  }

  out.push_back(implication(
      dF_name + " -> 0 => " + dF_name + " a.u.",
      {named(detect_vanishes(dF, l.window, eps / 2.0), dF_name)},
      {named(detect_au(dF, eps, l.window), dF_name)}));
  return out;
}

void check_channel_grids(const SampledFunction& f, const Channels& channels) {
  for (const auto& [name, ch] : channels) {
    if (!ch.same_grid(f)) {
      throw GridMismatch("channel " + name + " is not on the grid of f");
    }
  }
}

TheoremReport differential_case(const SampledFunction& f,
                                const Channels& channels, double eps,
                                const TheoremOptions& options) {
  TheoremReport report;
  const Layout l = layout_of(f);
  Derivatives d = resolve_derivatives(f, channels, 1, options.derive_missing);
  report.derived_channels = d.derived;
  report.implications = first_order_implications(
      f, d.chain[1], l, eps, "f", "df", "f -> alpha");
  report.observations.push_back(named(detect_limit(f, l.window, eps), "f"));
  return report;
}

TheoremReport integral_case(const SampledFunction& f, const Channels& channels,
                            double eps) {
  TheoremReport report;
  const SampledFunction* g_ptr = find_channel(channels, "g");
  const SampledFunction& g = g_ptr ? *g_ptr : f;
  const Layout l = layout_of(g);
  const SampledFunction F = cumulative_trapezoid(g);
  report.implications = first_order_implications(
      F, g, l, eps, "int g", "g", "int_0^t g -> alpha");
  report.observations.push_back(named(detect_limit(F, l.window, eps), "int g"));
  report.observations.push_back(named(detect_limit(g, l.window, eps), "g"));
  std::ostringstream os;
  os.precision(17);
  os << "trapezoid integral over the window: " << F.value(F.size() - 1);
  report.detail = os.str();
  return report;
}

TheoremReport hadamard_case(const SampledFunction& f, const Channels& channels,
                            double eps, const TheoremOptions& options) {
  const int n = options.order;
  if (n < 2) throw std::invalid_argument("hadamard needs order >= 2");
  TheoremReport report;
  const Layout l = layout_of(f);
  Derivatives d = resolve_derivatives(f, channels, n, options.derive_missing);
  report.derived_channels = d.derived;

  const SampledFunction& top = d.chain[static_cast<std::size_t>(n)];
  const double M = sup_abs_final_half(top, l);
  const double threshold =
      options.bound_threshold.value_or(default_bound_threshold(top, l.window));
  const double tail_length = l.t_last - f.time(l.half);
  const double d_min = n * l.step;
  const double d_max = tail_length / 2.0 / (n - 1);

  const double tol = max_tolerance(
      [&](double osc) {
        for (int k = 1; k < n; ++k) {
          if (derivative_bound(n, k, osc, 2.0 * M, d_min, d_max) > eps / 2.0) {
            return false;
          }
        }
        return true;
      },
      eps);

  std::vector<Verdict> hyps;
  hyps.push_back(settle_verdict(f, l, tol, "f"));
  hyps.push_back(named(detect_bounded(top, l.window, threshold), d.names.back()));
  for (int k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    hyps.push_back(probe_consistency(d.chain[i], d.chain[i + 1], l, eps,
                                     d.names[i] + "~" + d.names[i + 1]));
  }
  std::vector<Verdict> concls;
  for (int k = 1; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    concls.push_back(named(detect_vanishes(d.chain[i], l.window, eps), d.names[i]));
  }
  report.implications.push_back(implication(
      "f -> alpha and " + d.names.back() + " bounded => f^(k) -> 0 for k < " +
          std::to_string(n),
      std::move(hyps), std::move(concls)));
  report.observations.push_back(named(detect_limit(f, l.window, eps), "f"));
  return report;
}

TheoremReport higher_order_case(const SampledFunction& f,
                                const Channels& channels, double eps,
                                const TheoremOptions& options) {
  const int n = options.order;
  if (n < 1) throw std::invalid_argument("higher_order needs order >= 1");
  TheoremReport report;
  const Layout l = layout_of(f);
  Derivatives d = resolve_derivatives(f, channels, n, options.derive_missing);
  report.derived_channels = d.derived;
  const auto top_index = static_cast<std::size_t>(n);
  const SampledFunction& top = d.chain[top_index];
  const std::string& top_name = d.names[top_index];

  const Verdict plain = named(detect_limit(f, l.window, eps), "f");
  const double M = sup_abs_final_half(top, l);
  const double tail_length = l.t_last - f.time(l.half);

  struct Route {
    Verdict regularity;
    std::string label;
  };
  const Route routes[] = {
      {named(detect_au(top, eps / 2.0, l.window), top_name), "a.u."},
      {named(detect_uc(top, eps / 2.0, l.window), top_name),
       "uniformly continuous"},
  };
  for (const Route& route : routes) {
    const std::string statement = "f -> alpha and " + top_name + " " +
                                  route.label + " => f^(k) -> 0 for k <= " +
                                  std::to_string(n);
    std::vector<Verdict> concls;
    if (route.regularity.holds()) {
      const std::string& below_name = d.names[top_index - 1];
      FirstOrderStep step =
          first_order_step(d.chain[top_index - 1], top, l,
                           *route.regularity.certificate, eps, below_name,
                           top_name);
      if (step.available) {
        const double dd = step.min_distance;
        double tol = eps * dd / 16.0;
        if (n >= 2) {
          const double d_min = n * l.step;
          const double d_max = tail_length / 2.0 / (n - 1);
          tol = max_tolerance(
              [&](double osc) {
                for (int k = 1; k < n; ++k) {
                  double target = eps / 2.0;
                  if (k == n - 1) target = std::min(target, eps * dd / 16.0);
                  if (derivative_bound(n, k, osc, 2.0 * M, d_min, d_max) >
                      target) {
                    return false;
                  }
                }
                return true;
              },
              eps);
        }
        std::vector<Verdict> hyps{settle_verdict(f, l, tol, "f"),
                                  route.regularity};
        for (int k = 0; k + 1 < n; ++k) {
          const auto i = static_cast<std::size_t>(k);
          hyps.push_back(probe_consistency(d.chain[i], d.chain[i + 1], l, eps,
                                           d.names[i] + "~" + d.names[i + 1]));
        }
        hyps.push_back(step.residual);
        for (int k = 1; k < n; ++k) {
          const auto i = static_cast<std::size_t>(k);
          concls.push_back(
              named(detect_vanishes(d.chain[i], l.window, eps), d.names[i]));
        }
        concls.push_back(step.conclusion);
        report.implications.push_back(
            implication(statement, std::move(hyps), std::move(concls)));
        continue;
      }
    }
    for (int k = 1; k <= n; ++k) {
      const auto i = static_cast<std::size_t>(k);
      concls.push_back(
          named(detect_vanishes(d.chain[i], l.window, eps), d.names[i]));
    }
    report.implications.push_back(
        implication(statement, {plain, route.regularity}, std::move(concls)));
  }

  report.implications.push_back(implication(
      top_name + " -> 0 => " + top_name + " a.u.",
      {named(detect_vanishes(top, l.window, eps / 2.0), top_name)},
      {named(detect_au(top, eps, l.window), top_name)}));
  report.observations.push_back(plain);
  return report;
}

SampledFunction constant_like(const SampledFunction& f, double c) {
  return f.with_values(std::vector<double>(f.size(), c));
}

TheoremReport hardy_littlewood_case(const SampledFunction& f,
                                    const Channels& channels, double eps,
                                    const TheoremOptions& options) {
  TheoremReport report;
  const Layout l = layout_of(f);
  Derivatives d = resolve_derivatives(f, channels, 2, options.derive_missing);
  report.derived_channels = d.derived;
  const SampledFunction* g_ptr = find_channel(channels, "g");
  const SampledFunction* h_ptr = find_channel(channels, "h");
  const SampledFunction g = g_ptr ? *g_ptr : constant_like(f, 1.0);
  const SampledFunction h = h_ptr ? *h_ptr : constant_like(f, 1.0);

  std::vector<double> quantiles;
  for (int i = 0; i < 10; ++i) {
    quantiles.push_back(f.time(tail_start(f, l.range, i / 10.0)));
  }
  const std::vector<HlPoint> profile =
      hl_ratio_profile(f, d.chain[1], g, h, quantiles);

  std::vector<double> ratio(f.size()), f_over_g(f.size()), d2_over_h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    ratio[i] = std::abs(d.chain[1].value(i)) / std::sqrt(g.value(i) * h.value(i));
    f_over_g[i] = f.value(i) / g.value(i);
    d2_over_h[i] = d.chain[2].value(i) / h.value(i);
  }
  const SampledFunction ratio_fn = f.with_values(std::move(ratio));
  const SampledFunction fg_fn = f.with_values(std::move(f_over_g));
  const SampledFunction d2h_fn = f.with_values(std::move(d2_over_h));

  IndexRange tail{l.half, l.range.last};
  double g_max = 0.0, h_max = 0.0, g_min = kInf, h_min = kInf;
  for (std::size_t i = tail.first; i < tail.last; ++i) {
    g_max = std::max(g_max, g.value(i));
    g_min = std::min(g_min, g.value(i));
    h_max = std::max(h_max, h.value(i));
    h_min = std::min(h_min, h.value(i));
  }
  const double M = sup_abs_final_half(d2h_fn, l);
  const double tail_length = l.t_last - f.time(l.half);
  const double scale = std::sqrt(g_min * h_min);
  const bool has_g = g_ptr != nullptr;
  const double tol = max_tolerance(
      [&](double t) {
        const double osc = has_g ? 2.0 * t * g_max : t;
        return derivative_bound(2, 1, osc, 2.0 * M * h_max, 2.0 * l.step,
                                tail_length / 2.0) /
                   scale <=
               eps / 2.0;
      },
      eps);

  std::vector<Verdict> hyps;
  if (has_g) {
    if (tol > 0.0) {
      hyps.push_back(named(detect_vanishes(fg_fn, l.window, tol), "f/g"));
    } else {
      hyps.push_back(inconclusive(Property::vanishes, 0.0, l.window, "f/g",
                                  "no admissible tolerance"));
    }
  } else {
    hyps.push_back(settle_verdict(f, l, tol, "f"));
  }
  const double threshold =
      options.bound_threshold.value_or(default_bound_threshold(d2h_fn, l.window));
  hyps.push_back(named(detect_bounded(d2h_fn, l.window, threshold), "d2f/h"));
  hyps.push_back(probe_consistency(f, d.chain[1], l, eps, "f~df"));
  hyps.push_back(probe_consistency(d.chain[1], d.chain[2], l, eps, "df~d2f"));

  report.implications.push_back(implication(
      std::string(has_g ? "f = o(g)" : "f -> alpha") +
          " and d2f = O(h) => df = o(sqrt(g h))",
      std::move(hyps),
      {named(detect_vanishes(ratio_fn, l.window, eps), "df/sqrt(gh)")}));

  std::ostringstream os;
  os.precision(17);
  os << "ratio profile (T, sup):";
  for (const HlPoint& p : profile) os << " (" << p.T << ", " << p.sup_ratio << ")";
  report.detail = os.str();
  return report;
}

}  // namespace

std::string_view to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::differential: return "differential";
    case TheoremCase::integral: return "integral";
    case TheoremCase::hadamard: return "hadamard";
    case TheoremCase::higher_order: return "higher_order";
    case TheoremCase::hardy_littlewood: return "hardy_littlewood";
  }
  return "unknown";
}

std::optional<TheoremCase> parse_theorem_case(std::string_view name) {
  for (TheoremCase c :
       {TheoremCase::differential, TheoremCase::integral, TheoremCase::hadamard,
        TheoremCase::higher_order, TheoremCase::hardy_littlewood}) {
    if (to_string(c) == name) return c;
  }
  if (name == "higher-order") return TheoremCase::higher_order;
  if (name == "hardy-littlewood") return TheoremCase::hardy_littlewood;
  return std::nullopt;
}

std::string derivative_channel_name(int k) {
  return k == 1 ? "df" : "d" + std::to_string(k) + "f";
}

std::vector<Verdict> TheoremReport::hypothesis_verdicts() const {
  std::vector<Verdict> out;
  for (const auto& imp : implications) {
    out.insert(out.end(), imp.hypotheses.begin(), imp.hypotheses.end());
  }
  return out;
}

std::vector<Verdict> TheoremReport::conclusion_verdicts() const {
  std::vector<Verdict> out;
  for (const auto& imp : implications) {
    out.insert(out.end(), imp.conclusions.begin(), imp.conclusions.end());
  }
  return out;
}

TheoremReport check_theorem(TheoremCase theorem_case, const SampledFunction& f,
                            const Channels& channels, double eps,
                            const TheoremOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be positive");
  }
  check_channel_grids(f, channels);
  TheoremReport report;
  switch (theorem_case) {
    case TheoremCase::differential:
      report = differential_case(f, channels, eps, options);
      break;
    case TheoremCase::integral:
      report = integral_case(f, channels, eps);
      break;
    case TheoremCase::hadamard:
      report = hadamard_case(f, channels, eps, options);
      break;
    case TheoremCase::higher_order:
      report = higher_order_case(f, channels, eps, options);
      break;
    case TheoremCase::hardy_littlewood:
      report = hardy_littlewood_case(f, channels, eps, options);
      break;
  }
  report.theorem_case = theorem_case;
  report.consistent =
      std::all_of(report.implications.begin(), report.implications.end(),
                  [](const Implication& i) { return i.consistent; });
  if (!report.derived_channels.empty()) {
    std::string note = "derived by central differences:";
    for (const auto& name : report.derived_channels) note += " " + name;
    report.detail = report.detail.empty() ? note : report.detail + "; " + note;
  }
  return report;
}

SampledFunction central_difference(const SampledFunction& f) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  d[0] = (f.value(1) - f.value(0)) / (f.time(1) - f.time(0));
  d[n - 1] = (f.value(n - 1) - f.value(n - 2)) / (f.time(n - 1) - f.time(n - 2));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (f.value(i + 1) - f.value(i - 1)) / (f.time(i + 1) - f.time(i - 1));
  }
  return f.with_values(std::move(d));
}

SampledFunction cumulative_trapezoid(const SampledFunction& g) {
  std::vector<double> c(g.size());
  c[0] = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    c[i] = c[i - 1] +
           0.5 * (g.value(i - 1) + g.value(i)) * (g.time(i) - g.time(i - 1));
  }
  return g.with_values(std::move(c));
}

std::vector<HlPoint> hl_ratio_profile(const SampledFunction& f,
                                      const SampledFunction& df,
                                      const SampledFunction& g,
                                      const SampledFunction& h,
                                      std::span<const double> T_ladder) {
  if (!f.same_grid(df) || !f.same_grid(g) || !f.same_grid(h)) {
    throw GridMismatch("hardy-littlewood channels must share one grid");
  }
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(g.value(i) > 0.0) || !(h.value(i) > 0.0)) {
      throw std::invalid_argument("g and h must be strictly positive");
    }
    if (i > 0 && (g.value(i) < g.value(i - 1) || h.value(i) < h.value(i - 1))) {
      throw std::invalid_argument("g and h must be nondecreasing");
    }
  }
  std::vector<double> suffix(n);
  double running = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    running = std::max(running,
                       std::abs(df.value(k)) / std::sqrt(g.value(k) * h.value(k)));
    suffix[k] = running;
  }
  std::vector<HlPoint> out;
  out.reserve(T_ladder.size());
  for (double T : T_ladder) {
    const std::size_t i = f.lower_index(T);
    if (i >= n) throw std::invalid_argument("ladder point beyond the grid");
    out.push_back({T, suffix[i]});
  }
  return out;
}

StencilConstants stencil_constants(int n, int k) {
  if (n < 1 || k < 0 || k >= n) {
    throw std::invalid_argument("stencil needs 0 <= k < n");
  }
  const auto N = static_cast<std::size_t>(n);
  // Solve V^T w_k = e_k row by row through Gauss-Jordan on [V | I].
  std::vector<std::vector<long double>> a(N, std::vector<long double>(2 * N, 0));
  for (std::size_t j = 0; j < N; ++j) {
    long double p = 1;
    for (std::size_t m = 0; m < N; ++m) {
      a[j][m] = p;
      p *= static_cast<long double>(j);
    }
    a[j][N + j] = 1;
  }
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    const long double div = a[col][col];
    for (auto& x : a[col]) x /= div;
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const long double factor = a[r][col];
      for (std::size_t c = 0; c < 2 * N; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  // a[:, N..2N) now holds V^{-1}; row k gives the weights w_kj.
  StencilConstants s;
  const auto K = static_cast<std::size_t>(k);
  for (std::size_t j = 0; j < N; ++j) {
    const long double w = std::abs(a[K][N + j]);
    s.w_sum += static_cast<double>(w);
    s.v_sum += static_cast<double>(w * std::pow(static_cast<long double>(j), n));
  }
  return s;
}

double derivative_bound(int n, int k, double osc, double top, double d_min,
                        double d_max) {
  if (k < 1 || k >= n) throw std::invalid_argument("bound needs 1 <= k < n");
  if (!(d_min > 0.0) || d_min > d_max) return kInf;
  const StencilConstants s = stencil_constants(n, k);
  double k_fact = 1.0, n_fact = 1.0;
  for (int i = 2; i <= k; ++i) k_fact *= i;
  for (int i = 2; i <= n; ++i) n_fact *= i;
  const double a = k_fact * s.w_sum * osc / 2.0;
  const double b = k_fact * s.v_sum * top / n_fact;
  double d;
  if (b == 0.0) {
    d = d_max;
  } else if (a == 0.0) {
    d = d_min;
  } else {
    d = std::pow(k * a / ((n - k) * b), 1.0 / n);
    d = std::clamp(d, d_min, d_max);
  }
  return a / std::pow(d, k) + b * std::pow(d, n - k);
}

}  // namespace au
