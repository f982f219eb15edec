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

#include "hardyweak/weakval.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "hardyweak/errors.hpp"

namespace hardyweak {

PrePostEnsemble::PrePostEnsemble(Ket pre, Ket post)
    : pre_(std::move(pre)), post_(std::move(post)), overlap_(0.0) {
  if (pre_.dim() != post_.dim()) throw DimensionMismatch("PrePostEnsemble: pre/post dimensions differ");
  if (!pre_.is_normalized()) throw InvalidState("PrePostEnsemble: pre-selected state is not normalized");
  if (!post_.is_normalized()) throw InvalidState("PrePostEnsemble: post-selected state is not normalized");
  overlap_ = inner(post_, pre_);
}

WeakValue weak_value(const PrePostEnsemble& e, const Operator& a, std::string label) {
  if (a.dim() != e.dim()) throw DimensionMismatch("weak_value: operator/ensemble dimensions differ");
  if (std::abs(e.overlap()) <= kOrthogonalOverlap) {
    throw OrthogonalPostSelection("weak_value: |<post|pre>| <= 1e-12");
  }
  return {inner(e.post(), apply(a, e.pre())) / e.overlap(), std::move(label)};
}

WeakValue weak_value(const PrePostEnsemble& e, const SpectralOperator& a, std::string label) {
  return weak_value(e, a.dense(), std::move(label));
}

double postselection_probability(const PrePostEnsemble& e) { return std::norm(e.overlap()); }

double sum_rule_check(const PrePostEnsemble& e, std::span<const Operator> parts, const Operator& whole) {
  if (parts.empty()) throw std::invalid_argument("sum_rule_check: no parts");
  Operator sum = Operator::zero(whole.dim());
  for (const Operator& p : parts) sum = sum + p;
  if (max_abs_diff(sum, whole) > kTol) {
    throw std::invalid_argument("sum_rule_check: parts do not sum to the whole operator");
  }
  cplx total = 0.0;
  for (const Operator& p : parts) total += weak_value(e, p).value;
  return std::abs(total - weak_value(e, whole).value);
}

double product_rule_violation(const PrePostEnsemble& e, const Operator& a_photon1, const Operator& b_photon2) {
  if (a_photon1.dim() != 2 || b_photon2.dim() != 2 || e.dim() != 4) {
    throw DimensionMismatch("product_rule_violation: expects single-photon factors on a two-photon ensemble");
  }
  const cplx joint = weak_value(e, tensor(a_photon1, b_photon2)).value;
  const cplx a = weak_value(e, lift(a_photon1, 0)).value;
  const cplx b = weak_value(e, lift(b_photon2, 1)).value;
  return std::abs(joint - a * b);
}

VectorOperator::VectorOperator(std::vector<SpectralOperator> components) : components_(std::move(components)) {
  if (components_.empty()) throw InvalidState("VectorOperator: no components");
  for (const auto& c : components_) {
    if (c.dim() != components_.front().dim()) throw DimensionMismatch("VectorOperator: mixed dimensions");
  }
}

std::vector<WeakValue> vector_weak_value(const PrePostEnsemble& e, const VectorOperator& v) {
  std::vector<WeakValue> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(weak_value(e, v.components()[i], "component " + std::to_string(i + 1)));
  }
  return out;
}

SpectralOperator single_photon_observable(double gamma, double epsilon) {
  if (gamma == epsilon) return SpectralOperator::scalar(2, gamma);
  return SpectralOperator({{gamma, basis::proj_v()}, {epsilon, basis::proj_h()}});
}

Operator lift(const Operator& single, int photon) {
  if (single.dim() != 2) throw DimensionMismatch("lift: expects a 2x2 operator");
  if (photon == 0) return tensor(single, Operator::identity(2));
  if (photon == 1) return tensor(Operator::identity(2), single);
  throw std::invalid_argument("lift: photon must be 0 or 1");
}

SpectralOperator lift(const SpectralOperator& single, int photon) {
  std::vector<SpectralOperator::Branch> out;
  for (const auto& b : single.branches()) out.push_back({b.eigenvalue, lift(b.projector, photon)});
  return SpectralOperator(std::move(out));
}

VectorOperator build_a12(double gamma, double epsilon) {
  using basis::hh;
  using basis::hv;
  using basis::vh;
  using basis::vv;
  struct Term {
    double first;
    double second;
    Ket ket;
  };
  const Term terms[] = {
      {gamma, gamma, vv()},
      {gamma, epsilon, hv()},
      {epsilon, gamma, vh()},
      {epsilon, epsilon, hh()},
  };
  std::vector<SpectralOperator::Branch> first;
  std::vector<SpectralOperator::Branch> second;
  for (const Term& t : terms) {
    const Operator p = outer(t.ket, t.ket).as_hermitian();
    first.push_back({t.first, p});
    second.push_back({t.second, p});
  }
  return VectorOperator({SpectralOperator(std::move(first)), SpectralOperator(std::move(second))});
}

namespace {

// Tr over the other photon, divided by 2: the only candidate X with
// lift(X, photon) == op.
Operator reduce_to_photon(const Operator& op, int photon) {
  std::vector<cplx> e(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < 2; ++t) {
        s += photon == 0 ? op(basis::pair_index(i, t), basis::pair_index(j, t))
                         : op(basis::pair_index(t, i), basis::pair_index(t, j));
      }
      e[i * 2 + j] = 0.5 * s;
    }
  }
  return Operator(2, std::move(e));
}

SpectralOperator spectral_from_hermitian2(const Operator& x) {
  const Eigen2 eig = eigh2(x);
  if (eig.degenerate) return SpectralOperator::scalar(2, 0.5 * (eig.values[0] + eig.values[1]));
  return SpectralOperator({{eig.values[0], outer(eig.vectors[0], eig.vectors[0])},
                           {eig.values[1], outer(eig.vectors[1], eig.vectors[1])}});
}

}  // namespace

LocalFactor factor_single_photon(const Operator& op) {
  if (op.dim() != 4) throw DimensionMismatch("factor_single_photon: expects a two-photon operator");
  for (int photon : {1, 0}) {
    const Operator x = reduce_to_photon(op, photon);
    const double residual = max_abs_diff(op, lift(x, photon));
    if (residual <= kTol && x.is_hermitian()) {
      return LocalFactor{photon, spectral_from_hermitian2(x), residual};
    }
  }
  throw NotSeparable("factor_single_photon: operator does not act on a single photon");
}

A12Factors decompose_a12(const VectorOperator& v) {
  if (v.size() != 2 || v.dim() != 4) {
    throw DimensionMismatch("decompose_a12: expects two components on the two-photon space");
  }
  return A12Factors{factor_single_photon(v.components()[0].dense()),
                    factor_single_photon(v.components()[1].dense())};
}

}  // namespace hardyweak
