// Copyright 2026 The hardyweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact von Neumann pointer simulation.
//
// Each pointer starts in the real Gaussian
//
//   psi(x) = (2 pi sigma^2)^(-1/4) exp(-x^2 / (4 sigma^2)),
//
// so <x^2> = sigma^2. Coupling exp(-i g A (x) p) translates the pointer by
// g * a on the eigenspace of A with eigenvalue a, so the joint state stays a
// finite sum of system kets tensored with shifted Gaussians. All post-selected
// moments follow from four Gaussian kernels (hbar = 1):
//
//   <psi_u|psi_v>      = O(u, v) = exp(-(u - v)^2 / (8 sigma^2))
//   <psi_u|x|psi_v>    = O(u, v) (u + v) / 2
//   <psi_u|x^2|psi_v>  = O(u, v) (((u + v) / 2)^2 + sigma^2)
//   <psi_u|p|psi_v>    = O(u, v) i (u - v) / (4 sigma^2)
//
// No sampling and no grids; the grid evaluation lives in the tests only.

#ifndef HARDYWEAK_POINTER_HPP
#define HARDYWEAK_POINTER_HPP

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hardyweak/extrapolation.hpp"
#include "hardyweak/qcore.hpp"
#include "hardyweak/weakval.hpp"

namespace hardyweak {

struct PointerConfig {
  double sigma = 1.0;
  double g = 0.0;

  /// Throws std::invalid_argument unless sigma > 0 and g is finite.
  void validate() const;
};

/// Weak-limit readout coefficients, fitted against the analytic weak-value
/// oracle (see tests/calibration_test.cpp) and frozen here.
namespace calibration {
/// <p> / g -> kMomentumCoefficient * Im<A>_w / sigma^2.
inline constexpr double kMomentumCoefficient = 0.5;
/// <x1 x2> / (g1 g2) -> kJointCoefficient * Re(<A (x) B>_w + <A>_w conj(<B>_w)).
inline constexpr double kJointCoefficient = 0.5;
}  // namespace calibration

/// System (x) pointers as a finite superposition of shifted Gaussians.
class GaussianBranchState {
 public:
  struct Branch {
    Ket system;                  ///< unnormalized system component
    std::vector<double> shifts;  ///< one centre per attached pointer
  };

  /// No pointers attached yet; one branch holding `pre`.
  static GaussianBranchState prepare(const Ket& pre);

  const std::vector<Branch>& branches() const { return branches_; }
  const std::vector<PointerConfig>& pointers() const { return pointers_; }
  /// Labels of coupled observables, in coupling order.
  const std::vector<std::string>& coupling_order() const { return coupling_order_; }
  std::size_t system_dim() const { return branches_.front().system.dim(); }

  /// sum_jk <s_j|s_k> prod_p O(u_jp, u_kp).
  double norm_squared() const;

 private:
  friend GaussianBranchState couple(const GaussianBranchState&, const SpectralOperator&, const PointerConfig&,
                                    std::string);
  std::vector<Branch> branches_;
  std::vector<PointerConfig> pointers_;
  std::vector<std::string> coupling_order_;
};

/// Attaches a fresh pointer and applies exp(-i g A (x) p) exactly. Branches
/// whose system component vanishes are dropped.
GaussianBranchState couple(const GaussianBranchState& state, const SpectralOperator& obs, const PointerConfig& cfg,
                           std::string label = {});

struct PointerReadout {
  double postselection_probability = 0.0;
  std::vector<double> mean_x;
  std::vector<double> mean_p;
  /// <x_i x_j> conditioned on post-selection; diagonal includes sigma^2.
  std::vector<std::vector<double>> corr_xx;
  std::vector<std::string> coupling_order;
};

/// Post-selects on `post` and evaluates pointer moments in closed form.
/// Throws OrthogonalPostSelection when the post-selected norm is <= 1e-300.
PointerReadout readout(const GaussianBranchState& state, const Ket& post);

/// Per-coupling sample of the single-observable estimator.
struct SinglePoint {
  double g;
  double mean_x;
  double mean_p;
  double postselection_probability;
  /// mean_x / g + i sigma^2 mean_p / (kMomentumCoefficient g).
  cplx estimate;
  /// |estimate - analytic weak value|.
  double abs_error;
};

struct SingleEstimate {
  /// Real and imaginary parts each Richardson-extrapolated to g = 0.
  cplx estimate;
  /// Analytic weak value of the coupled observable (oracle).
  cplx analytic;
  double extrapolated_error;
  /// Log-log slope of abs_error vs g; see ConvergenceFit for exact sequences.
  ConvergenceFit fit;
  std::vector<SinglePoint> points;
};

/// Weak-limit estimate of <obs>_w from one pointer at each coupling in
/// `g_list` (strictly decreasing, positive, at least 3 entries).
SingleEstimate estimate_single(const PrePostEnsemble& e, const SpectralOperator& obs, double sigma,
                               std::span<const double> g_list);

struct JointPoint {
  double g;
  /// <x1 x2> / g^2 (post-selected).
  double raw_ratio;
  cplx marginal_a;
  cplx marginal_b;
  /// raw_ratio / kJointCoefficient - Re(marginal_a conj(marginal_b)).
  double extracted;
};

struct JointEstimate {
  double raw_ratio;  ///< extrapolated
  double extracted;  ///< extrapolated Re<A (x) B>_w
  double analytic_joint;
  double analytic_raw_ratio;
  std::vector<JointPoint> points;
};

/// Couples `a_photon1` (2x2) to pointer 1 and `b_photon2` (2x2) to pointer 2
/// with equal strength g, photon 1 first, and extracts Re<A (x) B>_w from the
/// post-selected position correlation.
JointEstimate estimate_joint(const PrePostEnsemble& e, const SpectralOperator& a_photon1,
                             const SpectralOperator& b_photon2, double sigma, std::span<const double> g_list);

/// Minimum g / sigma accepted by strong_regime.
inline constexpr double kStrongRegimeRatio = 10.0;

struct StrongOutcome {
  std::vector<double> eigenvalues;  ///< one per observable
  double joint_probability;         ///< P(outcome and post-selection)
  double conditional_probability;   ///< P(outcome | post-selection)
};

struct StrongReadout {
  std::vector<StrongOutcome> outcomes;
  double postselection_probability;
  /// Largest overlap between distinct outcome Gaussians, exp(-(g da)^2 / (8 sigma^2)).
  double overlap_bound;
};

/// Couples each observable (full system dimension) to its own pointer with
/// strength g, post-selects, and integrates the pointer distribution over the
/// window around each g * eigenvalue (midpoints between neighbouring
/// eigenvalues). Requires g / sigma >= kStrongRegimeRatio; throws
/// std::invalid_argument otherwise.
StrongReadout strong_regime(const PrePostEnsemble& e, std::span<const SpectralOperator> observables, double sigma,
                            double g);

}  // namespace hardyweak

#endif  // HARDYWEAK_POINTER_HPP
