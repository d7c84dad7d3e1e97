// SPDX-License-Identifier: Apache-2.0
#include "au/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "au/detect.hpp"
#include "au/modulus.hpp"

namespace au {
namespace {

// Grid point nearest to t; ties go to the later point.
std::size_t nearest_index(const SampledFunction& f, double t) {
  const std::size_t i = f.lower_index(t);
  if (i == 0) return 0;
  if (i >= f.size()) return f.size() - 1;
  return (t - f.time(i - 1) < f.time(i) - t) ? i - 1 : i;
}

struct NodeGrid {
  std::vector<double> nodes;
  std::vector<std::size_t> reads;
};

NodeGrid node_grid(const SampledFunction& f, double T, double delta) {
  NodeGrid g;
  const double last = f.back_time();
  for (std::size_t n = 0;; ++n) {
    const double t = T + static_cast<double>(n) * (delta / 2.0);
    if (t > last) break;
    g.nodes.push_back(t);
    g.reads.push_back(nearest_index(f, t));
  }
  return g;
}

double step_from(const SampledFunction& f, double T) {
  const std::size_t i = f.lower_index(T);
  return f.max_spacing({i == 0 ? 0 : i - 1, f.size()});
}

// Tail modulus at delta from the earliest point the construction reads.
ModulusResult certificate_modulus(const SampledFunction& f, double T,
                                  double delta, std::size_t first_read) {
  const double start = std::min(T, f.time(first_read));
  return tail_modulus_detail(f, TailWindow(start, f.back_time()), delta);
}

PiecewiseAffine interpolant(const SampledFunction& f, const NodeGrid& g) {
  std::vector<double> values;
  values.reserve(g.reads.size());
  for (std::size_t idx : g.reads) values.push_back(f.value(idx));
  return PiecewiseAffine(g.nodes, std::move(values));
}

double sup_deviation(const SampledFunction& f, const PiecewiseAffine& g,
                     double from, double to) {
  double sup = 0.0;
  const IndexRange r = f.indices_in(TailWindow(from, to));
  for (std::size_t i = r.first; i < r.last; ++i) {
    const double t = std::min(f.time(i), g.domain_end());
    sup = std::max(sup, std::abs(f.value(i) - g(t)));
  }
  return sup;
}

}  // namespace

PiecewiseAffine::PiecewiseAffine(std::vector<double> nodes,
                                 std::vector<double> node_values)
    : nodes_(std::move(nodes)), values_(std::move(node_values)) {
  if (nodes_.size() < 2 || nodes_.size() != values_.size()) {
    throw std::invalid_argument(
        "piecewise affine function needs >= 2 nodes and one value per node");
  }
  slopes_.reserve(nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i]) ||
        !(nodes_[i + 1] > nodes_[i])) {
      throw std::invalid_argument("nodes must be finite and strictly increasing");
    }
    slopes_.push_back((values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]));
  }
  if (!std::isfinite(values_.back()) || !std::isfinite(nodes_.back())) {
    throw std::invalid_argument("node values must be finite");
  }
}

double PiecewiseAffine::operator()(double t) const {
  if (!(t >= nodes_.front() && t <= nodes_.back())) {
    throw std::out_of_range("time outside the piecewise affine domain");
  }
  if (t == nodes_.back()) return values_.back();
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  const auto i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return values_[i] + slopes_[i] * (t - nodes_[i]);
}

double PiecewiseAffine::lipschitz() const {
  double l = 0.0;
  for (double s : slopes_) l = std::max(l, std::abs(s));
  return l;
}

PiecewiseAffine build_lipschitz_approximant(const SampledFunction& f,
                                            double eps,
                                            const TubeCertificate& cert) {
  if (!(eps > 0.0) || !(cert.delta > 0.0) || !std::isfinite(cert.T)) {
    throw std::invalid_argument("eps and delta must be positive");
  }
  if (cert.T < f.front_time() || cert.T >= f.back_time()) {
    throw Error("certificate T lies outside the sampled window");
  }
  const double step = step_from(f, cert.T);
  if (step > cert.delta / 2.0) {
    throw Error("grid too coarse: spacing exceeds delta/2");
  }
  const NodeGrid grid = node_grid(f, cert.T, cert.delta);
  if (grid.nodes.size() < 2) {
    throw Error("window holds fewer than two nodes");
  }
  const ModulusResult m =
      certificate_modulus(f, cert.T, cert.delta, grid.reads.front());
  if (!(m.omega < eps / 2.0)) {
    throw CertificateError(
        "certificate invalid: tail modulus reaches eps/2",
        Witness{f.time(m.s_index), f.time(m.t_index), m.omega, cert.delta});
  }
  PiecewiseAffine g = interpolant(f, grid);
  const double dev = sup_deviation(f, g, cert.T, g.domain_end());
  if (!(dev < eps) || !(g.lipschitz() < eps / cert.delta)) {
    throw Error("approximant post-check failed");
  }
  return g;
}

TubeCheck verify_tube(const SampledFunction& f, const PiecewiseAffine& g,
                      double eps, const TailWindow& window) {
  if (window.T < g.domain_start() || window.T_max > g.domain_end()) {
    throw Error("tube window outside the approximant's domain");
  }
  TubeCheck c;
  c.argmax = window.T;
  const IndexRange r = f.indices_in(window);
  for (std::size_t i = r.first; i < r.last; ++i) {
    const double d = std::abs(f.value(i) - g(f.time(i)));
    if (d > c.max_deviation) {
      c.max_deviation = d;
      c.argmax = f.time(i);
    }
  }
  c.inside = c.max_deviation < eps;
  return c;
}

TubeCheck verify_tube(const SampledFunction& f, const PiecewiseAffine& g,
                      double eps) {
  return verify_tube(f, g, eps, TailWindow(g.domain_start(), g.domain_end()));
}

URDecomposition ur_decompose(const SampledFunction& f, double eps, int k_max) {
  if (!(eps > 0.0) || k_max < 1) {
    throw std::invalid_argument("ur_decompose needs eps > 0 and k_max >= 1");
  }
  const TailWindow full = f.full_window();
  const Verdict pre = detect_au(f, eps / (2.0 * k_max), full);
  if (!pre.holds()) {
    throw DecompositionError(
        std::string("stage 1: f is not a.u. on the window (detect_au ") +
            std::string(to_string(pre.status)) + ")",
        pre.witness);
  }

  const double step = f.max_spacing({0, f.size()});
  struct Built {
    UrStage stage;
    NodeGrid grid;
  };
  std::vector<Built> built;
  bool truncated = false;
  std::string truncation;

  const Verdict first = detect_au(f, eps / 2.0, full);
  if (!first.holds() || first.certificate->delta < 2.0 * step) {
    truncated = true;
    truncation = "stage 1: no certificate at eps/2 with delta >= 2 grid steps";
  } else {
    const Certificate& c1 = *first.certificate;
    NodeGrid g = node_grid(f, c1.T, c1.delta);
    if (g.nodes.size() < 2) {
      truncated = true;
      truncation = "stage 1: window holds fewer than two nodes";
    } else {
      UrStage s;
      s.k = 1;
      s.epsilon = eps;
      s.T = c1.T;
      s.delta = c1.delta;
      built.push_back({s, std::move(g)});
    }
  }

  for (int k = 2; k <= k_max && !truncated; ++k) {
    const Built& prev = built.back();
    const double eps_k = eps / k;
    bool found = false;
    for (std::size_t n = 0; n < prev.grid.nodes.size() && !found; ++n) {
      const double T = prev.grid.nodes[n];
      if (!(T > prev.stage.T + 1.0)) continue;
      for (double delta = prev.stage.delta; delta >= 2.0 * step; delta /= 2.0) {
        if (T + delta / 2.0 > f.back_time()) continue;
        const ModulusResult m =
            certificate_modulus(f, T, delta, prev.grid.reads[n]);
        if (m.omega < eps_k / 2.0) {
          UrStage s;
          s.k = k;
          s.epsilon = eps_k;
          s.T = T;
          s.delta = delta;
          NodeGrid g = node_grid(f, T, delta);
          built.push_back({s, std::move(g)});
          found = true;
          break;
        }
      }
    }
    if (!found) {
      truncated = true;
      truncation = "stage " + std::to_string(k) +
                   ": no admissible node and delta in the window";
    }
  }
  if (built.empty()) {
    throw DecompositionError(truncation, std::nullopt);
  }

  // Assemble u: constant prefix, then each stage up to the next stage's start.
  std::vector<double> nodes;
  std::vector<double> values;
  const double first_value = f.value(built.front().grid.reads.front());
  if (built.front().stage.T > f.front_time()) {
    nodes.push_back(f.front_time());
    values.push_back(first_value);
  }
  for (std::size_t b = 0; b < built.size(); ++b) {
    const double end = b + 1 < built.size() ? built[b + 1].stage.T
                                            : std::numeric_limits<double>::infinity();
    const NodeGrid& g = built[b].grid;
    for (std::size_t n = 0; n < g.nodes.size() && g.nodes[n] < end; ++n) {
      nodes.push_back(g.nodes[n]);
      values.push_back(f.value(g.reads[n]));
    }
  }
  if (nodes.back() < f.back_time()) {
    const double v = values.back();
    nodes.push_back(f.back_time());
    values.push_back(v);
  }
  PiecewiseAffine u(std::move(nodes), std::move(values));

  std::vector<double> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f.value(i) - u(f.time(i));

  std::vector<UrStage> stages;
  for (std::size_t b = 0; b < built.size(); ++b) {
    UrStage s = built[b].stage;
    s.T_end = b + 1 < built.size() ? built[b + 1].stage.T : f.back_time();
    s.lipschitz = interpolant(f, built[b].grid).lipschitz();
    const IndexRange range = f.indices_in(TailWindow(s.T, s.T_end));
    for (std::size_t i = range.first; i < range.last; ++i) {
      s.sup_residual = std::max(s.sup_residual, std::abs(r[i]));
    }
    if (!(s.sup_residual < s.epsilon)) {
      throw Error("stage " + std::to_string(s.k) + " residual check failed");
    }
    stages.push_back(s);
  }
  return URDecomposition{std::move(u), std::move(stages),
                         f.with_values(std::move(r)), truncated,
                         std::move(truncation)};
}

LipschitzCheck piecewise_lipschitz_check(const PiecewiseAffine& g, int trials,
                                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  LipschitzCheck c;
  c.constant = g.lipschitz();
  double scale = 1.0;
  for (double v : g.node_values()) scale = std::max(scale, std::abs(v));
  const double eta = 1e-12 * scale;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(g.domain_start(), g.domain_end());
  c.verified = true;
  for (int i = 0; i < trials; ++i) {
    const double s = pick(rng);
    const double t = pick(rng);
    if (std::abs(g(t) - g(s)) > c.constant * std::abs(t - s) + eta) {
      c.verified = false;
      break;
    }
  }
  return c;
}

}  // namespace au
