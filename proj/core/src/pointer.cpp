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

#include "hardyweak/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hardyweak/errors.hpp"

namespace hardyweak {

namespace {

constexpr double kZeroBranchNorm = 1e-30;
constexpr double kZeroPostselectedNorm = 1e-300;

double overlap(double u, double v, double sigma) {
  const double d = u - v;
  return std::exp(-d * d / (8.0 * sigma * sigma));
}

// conj(c_j) c_k prod_p O(u_jp, u_kp) for every ordered branch pair.
struct PairWeights {
  std::size_t n = 0;
  std::vector<cplx> w;
  cplx operator()(std::size_t j, std::size_t k) const { return w[j * n + k]; }
};

PairWeights pair_weights(const GaussianBranchState& state, std::span<const cplx> amps) {
  const auto& br = state.branches();
  PairWeights pw{br.size(), std::vector<cplx>(br.size() * br.size())};
  for (std::size_t j = 0; j < br.size(); ++j) {
    for (std::size_t k = 0; k < br.size(); ++k) {
      double o = 1.0;
      for (std::size_t p = 0; p < state.pointers().size(); ++p) {
        o *= overlap(br[j].shifts[p], br[k].shifts[p], state.pointers()[p].sigma);
      }
      pw.w[j * pw.n + k] = std::conj(amps[j]) * amps[k] * o;
    }
  }
  return pw;
}

std::vector<cplx> postselected_amplitudes(const GaussianBranchState& state, const Ket& post) {
  std::vector<cplx> c;
  c.reserve(state.branches().size());
  for (const auto& b : state.branches()) c.push_back(inner(post, b.system));
  return c;
}

void validate_g_list(std::span<const double> g_list) {
  if (g_list.size() < 3) throw std::invalid_argument("g_list: need at least 3 couplings");
  for (std::size_t i = 0; i < g_list.size(); ++i) {
    if (!(g_list[i] > 0.0) || !std::isfinite(g_list[i])) {
      throw std::invalid_argument("g_list: couplings must be positive and finite");
    }
    if (i > 0 && !(g_list[i] < g_list[i - 1])) {
      throw std::invalid_argument("g_list: couplings must be strictly decreasing");
    }
  }
}

cplx pointer_estimate(double mean_x, double mean_p, double sigma, double g) {
  return {mean_x / g, sigma * sigma * mean_p / (calibration::kMomentumCoefficient * g)};
}

// Distinct eigenvalues, ascending.
std::vector<double> distinct_eigenvalues(const SpectralOperator& obs) {
  std::vector<double> values;
  for (const auto& b : obs.branches()) values.push_back(b.eigenvalue);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

// Mass of N(mean, sigma^2) on [lo, hi].
double gaussian_window_mass(double lo, double hi, double mean, double sigma) {
  const double s = sigma * std::sqrt(2.0);
  const double upper = std::isinf(hi) ? 0.0 : std::erfc((hi - mean) / s);
  const double lower = std::isinf(lo) ? 2.0 : std::erfc((lo - mean) / s);
  return 0.5 * (lower - upper);
}

}  // namespace

void PointerConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("PointerConfig: sigma must be > 0");
  if (!std::isfinite(g)) throw std::invalid_argument("PointerConfig: g must be finite");
}

GaussianBranchState GaussianBranchState::prepare(const Ket& pre) {
  GaussianBranchState s;
  s.branches_.push_back({pre, {}});
  return s;
}

double GaussianBranchState::norm_squared() const {
  double total = 0.0;
  for (std::size_t j = 0; j < branches_.size(); ++j) {
    for (std::size_t k = 0; k < branches_.size(); ++k) {
      double o = 1.0;
      for (std::size_t p = 0; p < pointers_.size(); ++p) {
        o *= overlap(branches_[j].shifts[p], branches_[k].shifts[p], pointers_[p].sigma);
      }
      total += (inner(branches_[j].system, branches_[k].system) * o).real();
    }
  }
  return total;
}

GaussianBranchState couple(const GaussianBranchState& state, const SpectralOperator& obs, const PointerConfig& cfg,
                           std::string label) {
  cfg.validate();
  if (obs.dim() != state.system_dim()) throw DimensionMismatch("couple: observable/system dimensions differ");
  GaussianBranchState out;
  out.pointers_ = state.pointers_;
  out.pointers_.push_back(cfg);
  out.coupling_order_ = state.coupling_order_;
  out.coupling_order_.push_back(label.empty() ? "pointer " + std::to_string(out.pointers_.size()) : std::move(label));
  for (const auto& b : state.branches_) {
    for (const auto& eig : obs.branches()) {
      Ket projected = apply(eig.projector, b.system);
      if (projected.norm_squared() <= kZeroBranchNorm) continue;
      std::vector<double> shifts = b.shifts;
      shifts.push_back(cfg.g * eig.eigenvalue);
      out.branches_.push_back({std::move(projected), std::move(shifts)});
    }
  }
  if (out.branches_.empty()) {
    out.branches_.push_back({state.branches_.front().system.scaled(0.0), std::vector<double>(out.pointers_.size())});
  }
  return out;
}

PointerReadout readout(const GaussianBranchState& state, const Ket& post) {
  if (!post.is_normalized()) throw InvalidState("readout: post-selected state is not normalized");
  if (post.dim() != state.system_dim()) throw DimensionMismatch("readout: post/system dimensions differ");
  const auto& br = state.branches();
  const std::size_t np = state.pointers().size();
  const std::vector<cplx> amps = postselected_amplitudes(state, post);
  const PairWeights w = pair_weights(state, amps);

  double prob = 0.0;
  std::vector<double> mx(np, 0.0);
  std::vector<double> mp(np, 0.0);
  std::vector<std::vector<double>> xx(np, std::vector<double>(np, 0.0));
  for (std::size_t j = 0; j < br.size(); ++j) {
    for (std::size_t k = 0; k < br.size(); ++k) {
      const cplx wjk = w(j, k);
      prob += wjk.real();
      for (std::size_t p = 0; p < np; ++p) {
        const double sigma = state.pointers()[p].sigma;
        const double u = br[j].shifts[p];
        const double v = br[k].shifts[p];
        const double mid_p = 0.5 * (u + v);
        mx[p] += wjk.real() * mid_p;
        mp[p] += (wjk * cplx(0.0, (u - v) / (4.0 * sigma * sigma))).real();
        for (std::size_t q = 0; q < np; ++q) {
          const double mid_q = 0.5 * (br[j].shifts[q] + br[k].shifts[q]);
          const double kernel = p == q ? mid_p * mid_p + sigma * sigma : mid_p * mid_q;
          xx[p][q] += wjk.real() * kernel;
        }
      }
    }
  }
  if (!(prob > kZeroPostselectedNorm)) {
    throw OrthogonalPostSelection("readout: post-selected norm vanishes");
  }
  PointerReadout r;
  r.postselection_probability = prob;
  for (std::size_t p = 0; p < np; ++p) {
    mx[p] /= prob;
    mp[p] /= prob;
    for (std::size_t q = 0; q < np; ++q) xx[p][q] /= prob;
  }
  // Symmetrize away rounding so corr_xx is exactly symmetric.
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t q = p + 1; q < np; ++q) xx[p][q] = xx[q][p] = 0.5 * (xx[p][q] + xx[q][p]);
  }
  r.mean_x = std::move(mx);
  r.mean_p = std::move(mp);
  r.corr_xx = std::move(xx);
  r.coupling_order = state.coupling_order();
  return r;
}

SingleEstimate estimate_single(const PrePostEnsemble& e, const SpectralOperator& obs, double sigma,
                               std::span<const double> g_list) {
  validate_g_list(g_list);
  const cplx analytic = weak_value(e, obs).value;
  const GaussianBranchState initial = GaussianBranchState::prepare(e.pre());

  SingleEstimate out;
  out.analytic = analytic;
  std::vector<double> re;
  std::vector<double> im;
  std::vector<double> errors;
  for (double g : g_list) {
    const PointerReadout r = readout(couple(initial, obs, {sigma, g}), e.post());
    const cplx est = pointer_estimate(r.mean_x[0], r.mean_p[0], sigma, g);
    const double err = std::abs(est - analytic);
    out.points.push_back({g, r.mean_x[0], r.mean_p[0], r.postselection_probability, est, err});
    re.push_back(est.real());
    im.push_back(est.imag());
    errors.push_back(err);
  }
  out.estimate = {richardson_linear(g_list, re), richardson_linear(g_list, im)};
  out.extrapolated_error = std::abs(out.estimate - analytic);
  out.fit = fit_convergence_order(g_list, errors);
  return out;
}

JointEstimate estimate_joint(const PrePostEnsemble& e, const SpectralOperator& a_photon1,
                             const SpectralOperator& b_photon2, double sigma, std::span<const double> g_list) {
  validate_g_list(g_list);
  if (a_photon1.dim() != 2 || b_photon2.dim() != 2 || e.dim() != 4) {
    throw DimensionMismatch("estimate_joint: expects single-photon observables on a two-photon ensemble");
  }
  const SpectralOperator a = lift(a_photon1, 0);
  const SpectralOperator b = lift(b_photon2, 1);
  const double joint = weak_value(e, tensor(a_photon1.dense(), b_photon2.dense())).value.real();
  const cplx wa = weak_value(e, a).value;
  const cplx wb = weak_value(e, b).value;

  JointEstimate out;
  out.analytic_joint = joint;
  out.analytic_raw_ratio = calibration::kJointCoefficient * (joint + (wa * std::conj(wb)).real());
  const GaussianBranchState initial = GaussianBranchState::prepare(e.pre());
  std::vector<double> raw;
  std::vector<double> extracted;
  for (double g : g_list) {
    const GaussianBranchState coupled = couple(couple(initial, a, {sigma, g}, "photon 1"), b, {sigma, g}, "photon 2");
    const PointerReadout r = readout(coupled, e.post());
    JointPoint pt;
    pt.g = g;
    pt.raw_ratio = r.corr_xx[0][1] / (g * g);
    pt.marginal_a = pointer_estimate(r.mean_x[0], r.mean_p[0], sigma, g);
    pt.marginal_b = pointer_estimate(r.mean_x[1], r.mean_p[1], sigma, g);
    pt.extracted =
        pt.raw_ratio / calibration::kJointCoefficient - (pt.marginal_a * std::conj(pt.marginal_b)).real();
    raw.push_back(pt.raw_ratio);
    extracted.push_back(pt.extracted);
    out.points.push_back(pt);
  }
  out.raw_ratio = richardson_linear(g_list, raw);
  out.extracted = richardson_linear(g_list, extracted);
  return out;
}

StrongReadout strong_regime(const PrePostEnsemble& e, std::span<const SpectralOperator> observables, double sigma,
                            double g) {
  if (observables.empty()) throw std::invalid_argument("strong_regime: no observables");
  if (!(sigma > 0.0) || !(g / sigma >= kStrongRegimeRatio)) {
    throw std::invalid_argument("strong_regime: requires g / sigma >= 10");
  }
  GaussianBranchState state = GaussianBranchState::prepare(e.pre());
  std::vector<std::vector<double>> levels;
  double bound = 0.0;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    state = couple(state, observables[i], {sigma, g}, "observable " + std::to_string(i + 1));
    levels.push_back(distinct_eigenvalues(observables[i]));
    const auto& lv = levels.back();
    for (std::size_t k = 1; k < lv.size(); ++k) bound = std::max(bound, overlap(g * lv[k - 1], g * lv[k], sigma));
  }

  const auto& br = state.branches();
  const PairWeights w = pair_weights(state, postselected_amplitudes(state, e.post()));
  double total = 0.0;
  for (std::size_t j = 0; j < br.size(); ++j) {
    for (std::size_t k = 0; k < br.size(); ++k) total += w(j, k).real();
  }
  if (!(total > kZeroPostselectedNorm)) throw OrthogonalPostSelection("strong_regime: post-selected norm vanishes");

  StrongReadout out;
  out.postselection_probability = total;
  out.overlap_bound = bound;

  // Odometer over the outcome grid, first observable most significant.
  std::vector<std::size_t> idx(levels.size(), 0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  while (true) {
    double joint = 0.0;
    for (std::size_t j = 0; j < br.size(); ++j) {
      for (std::size_t k = 0; k < br.size(); ++k) {
        double mass = 1.0;
        for (std::size_t p = 0; p < levels.size(); ++p) {
          const auto& lv = levels[p];
          const std::size_t i = idx[p];
          const double lo = i == 0 ? -inf : 0.5 * g * (lv[i - 1] + lv[i]);
          const double hi = i + 1 == lv.size() ? inf : 0.5 * g * (lv[i] + lv[i + 1]);
          mass *= gaussian_window_mass(lo, hi, 0.5 * (br[j].shifts[p] + br[k].shifts[p]), sigma);
        }
        joint += w(j, k).real() * mass;
      }
    }
    StrongOutcome o;
    for (std::size_t p = 0; p < levels.size(); ++p) o.eigenvalues.push_back(levels[p][idx[p]]);
    o.joint_probability = joint;
    o.conditional_probability = joint / total;
    out.outcomes.push_back(std::move(o));

    std::size_t p = levels.size();
    while (p > 0) {
      --p;
      if (++idx[p] < levels[p].size()) break;
      idx[p] = 0;
      if (p == 0) return out;
    }
  }
}

}  // namespace hardyweak
