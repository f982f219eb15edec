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

// Hardy's paradox as a pre/post-selected two-photon ensemble.
//
// Polarization encodes the interferometer arm. Under the default convention
// V marks the inner arm; the pre-selected state has no amplitude on
// |inner, inner> and the post-selection is the dark-port outcome
// (|inner> - |outer>) / sqrt(2) on each photon.
//
// Tables are indexed [photon1][photon2] with index 0 = inner arm and
// 1 = outer arm, so the numbers do not depend on the convention; only the
// labels do.

#ifndef HARDYWEAK_HARDY_HPP
#define HARDYWEAK_HARDY_HPP

#include <array>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hardyweak/qcore.hpp"
#include "hardyweak/weakval.hpp"

namespace hardyweak {

enum class PathConvention { v_inner, h_inner };

std::string_view to_string(PathConvention c);
/// Accepts "v-inner" / "h-inner"; throws std::invalid_argument.
PathConvention parse_convention(std::string_view text);

template <typename T>
using PathMatrix = std::array<std::array<T, 2>, 2>;

struct HardyScenario {
  PathConvention convention;
  PrePostEnsemble ensemble;
  /// Polarization letter of {inner, outer}: {"V", "H"} or {"H", "V"}.
  std::array<std::string, 2> labels;
  /// joint[i][j] = |i j><i j| on the two-photon space.
  PathMatrix<SpectralOperator> joint;
  /// single[photon][i] = projector on arm i of `photon`, lifted to 4 dims.
  std::array<std::array<SpectralOperator, 2>, 2> single;

  const Ket& pre() const { return ensemble.pre(); }
  const Ket& post() const { return ensemble.post(); }
};

HardyScenario build_scenario(PathConvention convention = PathConvention::v_inner);

struct WeakValueTable {
  std::array<std::string, 2> labels;
  PathMatrix<double> joint;
  std::array<double, 2> marginals_1;
  std::array<double, 2> marginals_2;
  double total;
  /// Largest |Im| over all twelve weak values in the table.
  double max_imag_residual;
  double postselection_probability;
};

WeakValueTable weak_value_table(const HardyScenario& s);

struct A12Report {
  double gamma;
  double epsilon;
  /// max entrywise |A12_component - lifted factor| over both components.
  double decomposition_residual;
  /// Photon each component acts on after factoring (expected {1, 0}).
  std::array<int, 2> component_photons;
  /// Eigenvalue on the inner / outer arm of each factor.
  std::array<std::array<double, 2>, 2> factor_eigenvalues;
  std::array<cplx, 2> vector_weak_value;
  /// <A2>_w and <A1>_w computed independently.
  std::array<cplx, 2> single_weak_values;
  /// Joint weak value of both photons on the inner arm.
  double joint_inner_inner;
  /// The vector weak value differs from the joint inner/inner value.
  bool discrepancy;
  /// Both components are multiples of the identity.
  bool degenerate;
};

A12Report a12_analysis(const HardyScenario& s, double gamma, double epsilon);

struct StrongComparison {
  /// P(arm pair | post-selection) after projective collapse of both photons.
  PathMatrix<double> strong_conditionals;
  WeakValueTable weak_table;
  double postselection_prob_strong;
  double postselection_prob_weak;
};

StrongComparison strong_comparison(const HardyScenario& s);

/// The paradox stated with computed numbers substituted.
nlohmann::json ifm_narrative(const HardyScenario& s);

}  // namespace hardyweak

#endif  // HARDYWEAK_HARDY_HPP
