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

#include "hardyweak/hardy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hardyweak {

namespace {

constexpr std::size_t kInner = 0;
constexpr std::size_t kOuter = 1;

// Single-photon ket of an arm under the convention.
Ket arm_ket(PathConvention c, std::size_t arm) {
  const bool v_is_inner = c == PathConvention::v_inner;
  const bool want_v = (arm == kInner) == v_is_inner;
  return want_v ? basis::v() : basis::h();
}

// Locale-independent, six significant digits.
std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x == 0.0 ? 0.0 : x, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

SpectralOperator projector_pair(const Operator& p) {
  return SpectralOperator({{1.0, p}, {0.0, Operator::identity(p.dim()) - p}});
}

}  // namespace

std::string_view to_string(PathConvention c) { return c == PathConvention::v_inner ? "v-inner" : "h-inner"; }

PathConvention parse_convention(std::string_view text) {
  if (text == "v-inner") return PathConvention::v_inner;
  if (text == "h-inner") return PathConvention::h_inner;
  throw std::invalid_argument("unknown convention: " + std::string(text));
}

HardyScenario build_scenario(PathConvention convention) {
  const Ket inner_arm = arm_ket(convention, kInner);
  const Ket outer_arm = arm_ket(convention, kOuter);

  // Every arm pair except both-inner, equally weighted.
  const Ket pre = (tensor(outer_arm, outer_arm) + tensor(outer_arm, inner_arm) + tensor(inner_arm, outer_arm))
                      .scaled(1.0 / std::sqrt(3.0));
  const Ket dark = (inner_arm - outer_arm).scaled(1.0 / std::sqrt(2.0));
  const Ket post = tensor(dark, dark);

  auto arm_projector = [&](std::size_t arm) {
    const Ket k = arm_ket(convention, arm);
    return outer(k, k).as_hermitian();
  };
  auto joint_projector = [&](std::size_t a, std::size_t b) {
    const Ket k = tensor(arm_ket(convention, a), arm_ket(convention, b));
    return projector_pair(outer(k, k).as_hermitian());
  };
  auto single_projector = [&](int photon, std::size_t arm) {
    return projector_pair(lift(arm_projector(arm), photon));
  };

  const bool v_inner = convention == PathConvention::v_inner;
  return HardyScenario{
      convention,
      PrePostEnsemble(pre, post),
      {v_inner ? "V" : "H", v_inner ? "H" : "V"},
      {{{joint_projector(kInner, kInner), joint_projector(kInner, kOuter)},
        {joint_projector(kOuter, kInner), joint_projector(kOuter, kOuter)}}},
      {{{single_projector(0, kInner), single_projector(0, kOuter)},
        {single_projector(1, kInner), single_projector(1, kOuter)}}},
  };
}

WeakValueTable weak_value_table(const HardyScenario& s) {
  WeakValueTable t{};
  t.labels = s.labels;
  double imag = 0.0;
  auto real_part = [&](const SpectralOperator& op) {
    const cplx w = weak_value(s.ensemble, op).value;
    imag = std::max(imag, std::abs(w.imag()));
    return w.real();
  };
  t.total = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      t.joint[i][j] = real_part(s.joint[i][j]);
      t.total += t.joint[i][j];
    }
    t.marginals_1[i] = real_part(s.single[0][i]);
    t.marginals_2[i] = real_part(s.single[1][i]);
  }
  t.max_imag_residual = imag;
  t.postselection_probability = postselection_probability(s.ensemble);
  return t;
}

A12Report a12_analysis(const HardyScenario& s, double gamma, double epsilon) {
  A12Report r{};
  r.gamma = gamma;
  r.epsilon = epsilon;
  r.degenerate = gamma == epsilon;

  const VectorOperator a12 = build_a12(gamma, epsilon);
  const A12Factors factors = decompose_a12(a12);
  const LocalFactor* parts[2] = {&factors.first_component, &factors.second_component};
  r.decomposition_residual = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    const LocalFactor& f = *parts[c];
    r.component_photons[c] = f.photon;
    const Operator relifted = lift(f.factor.dense(), f.photon);
    r.decomposition_residual = std::max(r.decomposition_residual, max_abs_diff(a12.components()[c].dense(), relifted));
    for (std::size_t arm = 0; arm < 2; ++arm) {
      const Ket k = arm_ket(s.convention, arm);
      r.factor_eigenvalues[c][arm] = inner(k, apply(f.factor.dense(), k)).real();
    }
  }

  const std::vector<WeakValue> vw = vector_weak_value(s.ensemble, a12);
  r.vector_weak_value = {vw[0].value, vw[1].value};
  const SpectralOperator single = single_photon_observable(gamma, epsilon);
  r.single_weak_values = {weak_value(s.ensemble, lift(single, 1)).value,
                          weak_value(s.ensemble, lift(single, 0)).value};
  r.joint_inner_inner = weak_value(s.ensemble, s.joint[kInner][kInner]).value.real();
  r.discrepancy = std::any_of(r.vector_weak_value.begin(), r.vector_weak_value.end(),
                              [&](cplx w) { return std::abs(w - r.joint_inner_inner) > kTol; });
  return r;
}

StrongComparison strong_comparison(const HardyScenario& s) {
  StrongComparison out{};
  out.weak_table = weak_value_table(s);
  out.postselection_prob_weak = postselection_probability(s.ensemble);

  // Lueders collapse onto each arm pair, then the dark-port post-selection.
  PathMatrix<double> joint{};
  double total = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const Ket pair = tensor(arm_ket(s.convention, i), arm_ket(s.convention, j));
      const double p_collapse = std::norm(inner(pair, s.pre()));
      const double p_pass = std::norm(inner(s.post(), pair));
      joint[i][j] = p_collapse * p_pass;
      total += joint[i][j];
    }
  }
  out.postselection_prob_strong = total;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out.strong_conditionals[i][j] = joint[i][j] / total;
  }
  return out;
}

nlohmann::json ifm_narrative(const HardyScenario& s) {
  const StrongComparison cmp = strong_comparison(s);
  const WeakValueTable& t = cmp.weak_table;
  const std::string in = s.labels[kInner];
  const std::string out = s.labels[kOuter];
  auto pair = [&](std::size_t i, std::size_t j) { return s.labels[i] + s.labels[j]; };

  nlohmann::json weak = nlohmann::json::object();
  nlohmann::json strong = nlohmann::json::object();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      weak[pair(i, j)] = t.joint[i][j];
      strong[pair(i, j)] = cmp.strong_conditionals[i][j];
    }
  }

  nlohmann::json n;
  n["convention"] = std::string(to_string(s.convention));
  n["inner_arm"] = in;
  n["outer_arm"] = out;
  n["postselection_probability"] = t.postselection_probability;
  n["weak_joint"] = weak;
  n["strong_conditionals"] = strong;
  n["statements"] = nlohmann::json::array({
      "Pre-selected pairs never occupy both inner arms: amplitude on |" + pair(kInner, kInner) + "> is 0.",
      "Both interaction-free measurements fire (dark ports) with probability " +
          num(t.postselection_probability) + ".",
      "Given that outcome, each photon's weak arm occupation is inner " + num(t.marginals_1[kInner]) +
          ", outer " + num(t.marginals_1[kOuter]) + ".",
      "Joint weak values: " + pair(kInner, kInner) + " " + num(t.joint[kInner][kInner]) + ", " +
          pair(kInner, kOuter) + " " + num(t.joint[kInner][kOuter]) + ", " + pair(kOuter, kInner) + " " +
          num(t.joint[kOuter][kInner]) + ", " + pair(kOuter, kOuter) + " " +
          num(t.joint[kOuter][kOuter]) + " (negative pair occupation of the outer arms).",
      "Projective which-arm detectors instead give conditionals " + pair(kInner, kInner) + " " +
          num(cmp.strong_conditionals[kInner][kInner]) + ", " + pair(kOuter, kOuter) + " " +
          num(cmp.strong_conditionals[kOuter][kOuter]) +
          ", all nonnegative, and raise the post-selection probability to " +
          num(cmp.postselection_prob_strong) + ".",
  });
  return n;
}

}  // namespace hardyweak
