// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "au/error.hpp"
#include "au/funcspace.hpp"
#include "au/verdict.hpp"

namespace au {

/// Continuous piecewise-affine function through (nodes[i], node_values[i]).
/// Defined on [domain_start, nodes.back()], domain_start == nodes.front().
class PiecewiseAffine {
 public:
  PiecewiseAffine(std::vector<double> nodes, std::vector<double> node_values);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& node_values() const noexcept { return values_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }
  double domain_start() const noexcept { return nodes_.front(); }
  double domain_end() const noexcept { return nodes_.back(); }
  std::size_t segments() const noexcept { return slopes_.size(); }

  /// Throws std::out_of_range outside the domain.
  double operator()(double t) const;

  /// max |slopes|, the global Lipschitz constant.
  double lipschitz() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// The certificate handed to a construction does not hold on the samples.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, Witness witness)
      : Error(what), witness_(witness) {}
  const Witness& witness() const noexcept { return witness_; }

 private:
  Witness witness_;
};

struct TubeCertificate {
  double T = 0.0;
  double delta = 0.0;
};

/// Interpolates f at nodes T + n*delta/2 (values read from the nearest grid
/// point). The certificate is validated first: the tail modulus at delta,
/// from the earliest grid point read, must be below eps/2. Before returning,
/// checks sup |f - g| < eps on the grid points of [T, last node] and
/// max |slope| < eps/delta.
///
/// Throws CertificateError carrying the violating pair, or au::Error when
/// the grid spacing exceeds delta/2 or the window holds fewer than two nodes.
PiecewiseAffine build_lipschitz_approximant(const SampledFunction& f,
                                            double eps,
                                            const TubeCertificate& cert);

struct TubeCheck {
  bool inside = false;
  double max_deviation = 0.0;
  double argmax = 0.0;
};

/// max |f - g| over the grid points of the window; inside when < eps.
/// Throws au::Error when the window leaves g's domain.
TubeCheck verify_tube(const SampledFunction& f, const PiecewiseAffine& g,
                      double eps, const TailWindow& window);
/// Over g's whole domain.
TubeCheck verify_tube(const SampledFunction& f, const PiecewiseAffine& g,
                      double eps);

struct UrStage {
  int k = 0;
  double epsilon = 0.0;
  double T = 0.0;
  double T_end = 0.0;  // start of the next stage, or the last grid time
  double delta = 0.0;
  double lipschitz = 0.0;
  double sup_residual = 0.0;  // sup |f - u| over grid points of [T, T_end]
};

struct URDecomposition {
  PiecewiseAffine u;  // constant u_1(T_1) before the first stage
  std::vector<UrStage> stages;
  SampledFunction r_samples;  // f - u on the grid
  bool truncated = false;
  std::string truncation;  // why the next stage could not be built
};

/// f did not pass the a.u. precondition of ur_decompose.
class DecompositionError : public Error {
 public:
  DecompositionError(const std::string& what, std::optional<Witness> witness)
      : Error(what), witness_(witness) {}
  const std::optional<Witness>& witness() const noexcept { return witness_; }

 private:
  std::optional<Witness> witness_;
};

/// Stages k = 1..k_max with eps_k = eps/k. Stage 1 takes its certificate
/// from detect_au at eps/2; stage k starts at the first stage k-1 node past
/// T_{k-1} + 1 at which some delta_{k-1}/2^m (not below 2 grid steps) gives
/// a tail modulus under eps_k/2. Stops early with `truncated` set when no
/// such node exists.
///
/// Throws DecompositionError when detect_au at eps/(2 k_max) does not Hold.
URDecomposition ur_decompose(const SampledFunction& f, double eps, int k_max);

struct LipschitzCheck {
  double constant = 0.0;
  bool verified = false;
};

/// Random pairs in g's domain against |g(t) - g(s)| <= L |t - s| + eta,
/// eta = 1e-12 * max(1, max |node value|).
LipschitzCheck piecewise_lipschitz_check(const PiecewiseAffine& g, int trials,
                                         std::uint64_t seed);

}  // namespace au
