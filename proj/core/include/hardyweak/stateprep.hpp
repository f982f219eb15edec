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

// Two ways of preparing the two-photon Hardy state.
//
// The heralded two-pair scheme leaves a which-path record in the vertical
// ports of the two polarizing beam splitters; tracing that record out gives an
// incoherent mixture. The single-pair scheme writes the target in Schmidt form
// a|psi phi> + b|psi' phi'> and reaches it from a|HH> + b|VV> with one local
// rotation per photon.

#ifndef HARDYWEAK_STATEPREP_HPP
#define HARDYWEAK_STATEPREP_HPP

#include <array>
#include <optional>
#include <string>

#include "hardyweak/hardy.hpp"
#include "hardyweak/qcore.hpp"

namespace hardyweak {

struct PreparationOutcome {
  DensityMatrix state;
  double purity;
  double fidelity_with_target;
  double coherence_offdiag_max;
};

PreparationOutcome summarize_preparation(const DensityMatrix& state, const Ket& target);

/// Which-path register left behind by the heralded two-pair source.
namespace which_path {
inline constexpr std::size_t kNoPhotonExits = 0;
inline constexpr std::size_t kVAtUpperPbs = 1;
inline constexpr std::size_t kVAtLowerPbs = 2;
inline constexpr std::size_t kDim = 3;
}  // namespace which_path

/// The 12-dimensional system (x) which-path state before the trace,
/// (|HH>|e0> + |HV>|e1> + |VH>|e2>) / sqrt(3).
Ket flawed_prep_joint_state();

/// Traces the which-path register out of flawed_prep_joint_state(). Fidelity
/// is measured against the default-convention Hardy pre-selected state.
PreparationOutcome simulate_flawed_prep();

struct SchmidtForm {
  double a;  ///< larger Schmidt coefficient
  double b;
  /// Columns map |H> -> psi, |V> -> psi' (photon 1) and |H> -> phi,
  /// |V> -> phi' (photon 2).
  Operator local_rotation_1;
  Operator local_rotation_2;
  /// The reduced spectrum was degenerate; photon 1 basis fell back to {H, V}.
  bool degenerate;
  /// Amplitudes real, nonnegative, descending; degenerate spectra use {H, V}.
  static constexpr const char* kPhaseConvention = "real-nonnegative-descending;degenerate->HV";
};

/// Requires a normalized two-photon ket; throws InvalidState /
/// DimensionMismatch.
SchmidtForm schmidt_decompose(const Ket& target);

/// (U1 (x) U2)(a|HH> + b|VV>).
Ket schmidt_reconstruct(const SchmidtForm& form);

/// Builds the target from a|HH> + b|VV> and the local rotations.
PreparationOutcome simulate_correct_prep(const Ket& target);

struct PrepComparison {
  PreparationOutcome flawed;
  PreparationOutcome correct;
  SchmidtForm schmidt;
  /// Joint weak values [inner/outer][inner/outer] of the pure target under the
  /// dark-port post-selection; empty when the target is orthogonal to it.
  std::optional<PathMatrix<double>> target_weak_joint;
};

PrepComparison compare_preps(const Ket& target);

}  // namespace hardyweak

#endif  // HARDYWEAK_STATEPREP_HPP
