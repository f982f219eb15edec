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

#include "hardyweak/stateprep.hpp"

#include <algorithm>
#include <cmath>

#include "hardyweak/errors.hpp"

namespace hardyweak {

namespace {

// Columns c0, c1 as a 2x2 matrix.
Operator from_columns(const Ket& c0, const Ket& c1) { return Operator{{c0[0], c1[0]}, {c0[1], c1[1]}}; }

// (<k| (x) I)|target>: the photon-2 vector paired with photon-1 state k.
Ket contract_first(const Ket& k, const Ket& target) {
  std::vector<cplx> out(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out[j] += std::conj(k[i]) * target[basis::pair_index(i, j)];
  }
  return Ket(std::move(out));
}

Ket orthogonal_complement(const Ket& k) { return Ket({-std::conj(k[1]), std::conj(k[0])}); }

}  // namespace

PreparationOutcome summarize_preparation(const DensityMatrix& state, const Ket& target) {
  return PreparationOutcome{state, state.purity(), state.fidelity(target), state.max_offdiagonal()};
}

Ket flawed_prep_joint_state() {
  using namespace which_path;
  const Ket env0 = Ket::basis(kDim, kNoPhotonExits);
  const Ket env1 = Ket::basis(kDim, kVAtUpperPbs);
  const Ket env2 = Ket::basis(kDim, kVAtLowerPbs);
  return (tensor(basis::hh(), env0) + tensor(basis::hv(), env1) + tensor(basis::vh(), env2))
      .scaled(1.0 / std::sqrt(3.0));
}

PreparationOutcome simulate_flawed_prep() {
  const DensityMatrix joint = DensityMatrix::pure(flawed_prep_joint_state());
  const DensityMatrix reduced = partial_trace(joint, Subsystem::first, {4, which_path::kDim});
  return summarize_preparation(reduced, build_scenario(PathConvention::v_inner).pre());
}

SchmidtForm schmidt_decompose(const Ket& target) {
  if (target.dim() != 4) throw DimensionMismatch("schmidt_decompose: expects a two-photon ket");
  if (!target.is_normalized()) throw InvalidState("schmidt_decompose: target is not normalized");

  const DensityMatrix rho1 = partial_trace(DensityMatrix::pure(target), Subsystem::first);
  const Eigen2 eig = eigh2(rho1.op());
  const Ket psi = eig.vectors[0];
  const Ket psi_perp = orthogonal_complement(psi);

  // Photon-2 partners absorb the phases so that a and b come out real. The
  // second partner is taken as the exact complement of the first, keeping
  // the photon-2 rotation unitary near degeneracy.
  const Ket phi_raw = contract_first(psi, target);
  const double a = phi_raw.norm();
  const Ket phi = phi_raw.scaled(1.0 / a);
  const Ket complement = orthogonal_complement(phi);
  const cplx along = inner(complement, contract_first(psi_perp, target));
  const double b = std::abs(along);
  const Ket phi_perp = b > 0.0 ? complement.scaled(along / b) : complement;

  return SchmidtForm{a, b, from_columns(psi, psi_perp), from_columns(phi, phi_perp), eig.degenerate};
}

Ket schmidt_reconstruct(const SchmidtForm& form) {
  const Ket seed = (basis::hh().scaled(form.a) + basis::vv().scaled(form.b));
  return apply(tensor(form.local_rotation_1, form.local_rotation_2), seed);
}

PreparationOutcome simulate_correct_prep(const Ket& target) {
  const SchmidtForm form = schmidt_decompose(target);
  const Ket prepared = schmidt_reconstruct(form).normalized();
  return summarize_preparation(DensityMatrix::pure(prepared), target);
}

PrepComparison compare_preps(const Ket& target) {
  const SchmidtForm form = schmidt_decompose(target);
  const Ket prepared = schmidt_reconstruct(form).normalized();
  PrepComparison out{
      summarize_preparation(simulate_flawed_prep().state, target),
      summarize_preparation(DensityMatrix::pure(prepared), target),
      form,
      std::nullopt,
  };

  const HardyScenario hardy = build_scenario(PathConvention::v_inner);
  const PrePostEnsemble e(target, hardy.post());
  if (std::abs(e.overlap()) > kOrthogonalOverlap) {
    PathMatrix<double> joint{};
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) joint[i][j] = weak_value(e, hardy.joint[i][j]).value.real();
    }
    out.target_weak_joint = joint;
  }
  return out;
}

}  // namespace hardyweak
