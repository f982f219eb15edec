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

// Pre/post-selected ensembles and analytic weak values,
//
//   <A>_w = <post|A|pre> / <post|pre>,
//
// plus sum-rule and product-rule diagnostics and vector operators.

#ifndef HARDYWEAK_WEAKVAL_HPP
#define HARDYWEAK_WEAKVAL_HPP

#include <span>
#include <string>
#include <vector>

#include "hardyweak/qcore.hpp"

namespace hardyweak {

/// Weak values are undefined when |<post|pre>| is at or below this.
inline constexpr double kOrthogonalOverlap = 1e-12;

class PrePostEnsemble {
 public:
  /// Both kets must be normalized within kTol and have equal dimension;
  /// throws InvalidState / DimensionMismatch. Orthogonal pairs are allowed.
  PrePostEnsemble(Ket pre, Ket post);

  const Ket& pre() const { return pre_; }
  const Ket& post() const { return post_; }
  /// <post|pre>.
  cplx overlap() const { return overlap_; }
  std::size_t dim() const { return pre_.dim(); }

 private:
  Ket pre_;
  Ket post_;
  cplx overlap_;
};

struct WeakValue {
  cplx value;
  std::string operator_label;
};

/// Throws OrthogonalPostSelection when |overlap| <= kOrthogonalOverlap.
WeakValue weak_value(const PrePostEnsemble& e, const Operator& a, std::string label = {});
WeakValue weak_value(const PrePostEnsemble& e, const SpectralOperator& a, std::string label = {});

/// |<post|pre>|^2.
double postselection_probability(const PrePostEnsemble& e);

/// |sum of weak values of `parts` - weak value of `whole`|. Throws
/// std::invalid_argument if the parts do not sum to `whole` within kTol.
double sum_rule_check(const PrePostEnsemble& e, std::span<const Operator> parts, const Operator& whole);

/// |<A (x) B>_w - <A (x) I>_w <I (x) B>_w| for single-photon A (photon 1) and
/// B (photon 2) on a two-photon ensemble.
double product_rule_violation(const PrePostEnsemble& e, const Operator& a_photon1, const Operator& b_photon2);

/// An ordered tuple of observables measured componentwise.
class VectorOperator {
 public:
  /// Nonempty, uniform dimension; throws InvalidState / DimensionMismatch.
  explicit VectorOperator(std::vector<SpectralOperator> components);

  const std::vector<SpectralOperator>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  std::size_t dim() const { return components_.front().dim(); }

 private:
  std::vector<SpectralOperator> components_;
};

std::vector<WeakValue> vector_weak_value(const PrePostEnsemble& e, const VectorOperator& v);

/// Single-photon pointer calibration operator gamma |V><V| + epsilon |H><H|.
/// Equal constants collapse to one identity branch.
SpectralOperator single_photon_observable(double gamma, double epsilon);

/// Lifts a single-photon operator to the two-photon space acting on `photon`
/// (0 or 1), identity on the other.
Operator lift(const Operator& single, int photon);
SpectralOperator lift(const SpectralOperator& single, int photon);

/// The two-component operator
///
///   (g,g)|VV><VV| + (g,e)|HV><HV| + (e,g)|VH><VH| + (e,e)|HH><HH|
///
/// built term by term from the four joint projectors.
VectorOperator build_a12(double gamma, double epsilon);

/// A two-photon operator that acts on one photon only.
struct LocalFactor {
  int photon;  ///< 0 or 1; the photon the factor acts on
  SpectralOperator factor;
  /// Entrywise residual between the component and the re-lifted factor.
  double residual;
};

/// Writes `op` as lift(factor, photon), trying photon 2 first. Throws
/// NotSeparable when neither fits within kTol.
LocalFactor factor_single_photon(const Operator& op);

struct A12Factors {
  LocalFactor first_component;   ///< expected: photon 2 operator A2
  LocalFactor second_component;  ///< expected: photon 1 operator A1
};

/// Factors each component of a two-component, two-photon vector operator.
/// Throws NotSeparable if either component is not single-photon.
A12Factors decompose_a12(const VectorOperator& v);

}  // namespace hardyweak

#endif  // HARDYWEAK_WEAKVAL_HPP
