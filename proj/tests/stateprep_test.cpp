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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hardyweak/errors.hpp"
#include "oracles/random_states.hpp"

using namespace hardyweak;

namespace {

Ket hardy_pre() { return build_scenario().pre(); }

void expect_unitary(const Operator& u) {
  EXPECT_LE(max_abs_diff(dagger(u) * u, Operator::identity(u.dim())), 1e-12);
}

}  // namespace

TEST(FlawedPrep, joint_state_layout) {
  const Ket k = flawed_prep_joint_state();
  ASSERT_EQ(k.dim(), 12u);
  const double third = 1.0 / std::sqrt(3.0);
  // index = 3 * pair + environment
  for (std::size_t i = 0; i < 12; ++i) {
    const bool occupied = i == 0 * 3 + which_path::kNoPhotonExits || i == 1 * 3 + which_path::kVAtUpperPbs ||
                          i == 2 * 3 + which_path::kVAtLowerPbs;
    EXPECT_NEAR(std::abs(k[i]), occupied ? third : 0.0, 1e-15);
  }
}

TEST(FlawedPrep, reduced_state_is_incoherent_mixture) {
  const PreparationOutcome o = simulate_flawed_prep();
  const Operator& rho = o.state.op();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double expected = (i == j && i < 3) ? 1.0 / 3.0 : 0.0;
      EXPECT_NEAR(std::abs(rho(i, j) - expected), 0.0, 1e-15) << i << "," << j;
    }
  }
  EXPECT_NEAR(o.coherence_offdiag_max, 0.0, 1e-15);
  EXPECT_NEAR(o.fidelity_with_target, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(o.purity, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

TEST(Schmidt, hardy_coefficients) {
  const SchmidtForm f = schmidt_decompose(hardy_pre());
  EXPECT_NEAR(f.a * f.a, (3.0 + std::sqrt(5.0)) / 6.0, 1e-12);
  EXPECT_NEAR(f.b * f.b, (3.0 - std::sqrt(5.0)) / 6.0, 1e-12);
  EXPECT_NEAR(f.a, 0.934172, 1e-6);
  EXPECT_NEAR(f.b, 0.356822, 1e-6);
  EXPECT_FALSE(f.degenerate);
  expect_unitary(f.local_rotation_1);
  expect_unitary(f.local_rotation_2);
  EXPECT_GE(std::norm(inner(schmidt_reconstruct(f), hardy_pre())), 1.0 - 1e-12);
}

TEST(Schmidt, product_state) {
  const SchmidtForm f = schmidt_decompose(basis::hv());
  EXPECT_NEAR(f.a, 1.0, 1e-12);
  EXPECT_NEAR(f.b, 0.0, 1e-12);
  EXPECT_GE(std::norm(inner(schmidt_reconstruct(f), basis::hv())), 1.0 - 1e-12);
}

TEST(Schmidt, maximally_entangled_uses_hv_basis) {
  const Ket bell = (basis::hv() - basis::vh()).scaled(1.0 / std::sqrt(2.0));
  const SchmidtForm f = schmidt_decompose(bell);
  EXPECT_TRUE(f.degenerate);
  EXPECT_NEAR(f.a, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f.b, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_LE(max_abs_diff(f.local_rotation_1, Operator::identity(2)), 1e-12);
  expect_unitary(f.local_rotation_2);
  EXPECT_GE(std::norm(inner(schmidt_reconstruct(f), bell)), 1.0 - 1e-12);
}

TEST(Schmidt, amplitudes_real_nonnegative_descending) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const SchmidtForm f = schmidt_decompose(oracle::random_ket(rng, 4));
    EXPECT_GE(f.b, 0.0);
    EXPECT_GE(f.a, f.b);
    EXPECT_NEAR(f.a * f.a + f.b * f.b, 1.0, 1e-12);
  }
}

TEST(Schmidt, random_round_trip) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 1000; ++trial) {
    const Ket target = oracle::random_ket(rng, 4);
    const SchmidtForm f = schmidt_decompose(target);
    expect_unitary(f.local_rotation_1);
    expect_unitary(f.local_rotation_2);
    EXPECT_GE(std::norm(inner(schmidt_reconstruct(f), target)), 1.0 - 1e-12) << "trial " << trial;
  }
}

TEST(Schmidt, spectrum_invariant_under_local_unitaries) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const Ket target = oracle::random_ket(rng, 4);
    const Operator u = tensor(oracle::random_unitary2(rng), oracle::random_unitary2(rng));
    const SchmidtForm f = schmidt_decompose(target);
    const SchmidtForm g = schmidt_decompose(apply(u, target).normalized());
    EXPECT_NEAR(f.a * f.a, g.a * g.a, 1e-12);
    EXPECT_NEAR(f.b * f.b, g.b * g.b, 1e-12);
  }
}

TEST(Schmidt, rejects_bad_input) {
  EXPECT_THROW(schmidt_decompose(basis::h()), DimensionMismatch);
  EXPECT_THROW(schmidt_decompose(Ket({1.0, 1.0, 0.0, 0.0})), InvalidState);
}

TEST(CorrectPrep, hardy_target) {
  const PreparationOutcome o = simulate_correct_prep(hardy_pre());
  EXPECT_NEAR(o.fidelity_with_target, 1.0, 1e-12);
  EXPECT_NEAR(o.purity, 1.0, 1e-12);
  EXPECT_NEAR(o.coherence_offdiag_max, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(o.state.op().trace().real(), 1.0, 1e-12);
}

TEST(Compare, flawed_versus_correct) {
  const PrepComparison c = compare_preps(hardy_pre());
  EXPECT_NEAR(c.flawed.fidelity_with_target, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.correct.fidelity_with_target, 1.0, 1e-12);
  EXPECT_NEAR(c.flawed.purity, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(c.correct.purity, 1.0, 1e-12);
  EXPECT_NEAR(c.flawed.coherence_offdiag_max, 0.0, 1e-15);
  EXPECT_NEAR(c.correct.coherence_offdiag_max, 1.0 / 3.0, 1e-12);
  ASSERT_TRUE(c.target_weak_joint.has_value());
  EXPECT_NEAR((*c.target_weak_joint)[1][1], -1.0, 1e-12);
  EXPECT_NEAR((*c.target_weak_joint)[0][0], 0.0, 1e-12);
}

TEST(Compare, target_orthogonal_to_postselection_has_no_weak_table) {
  const Ket target = (basis::hh() + basis::hv()).scaled(1.0 / std::sqrt(2.0));
  EXPECT_FALSE(compare_preps(target).target_weak_joint.has_value());
}
