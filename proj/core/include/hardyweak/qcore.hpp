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

// Dense complex linear algebra over small labeled Hilbert spaces.
//
// Two-photon spaces use the basis order {HH, HV, VH, VV}: the left tensor
// factor (photon 1) is the most significant index, and H = 0, V = 1 within a
// single photon. Every value type here is immutable after construction.

#ifndef HARDYWEAK_QCORE_HPP
#define HARDYWEAK_QCORE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hardyweak {

using cplx = std::complex<double>;

/// Default absolute tolerance for structural checks.
inline constexpr double kTol = 1e-12;

/// Tolerance for the positivity check of density matrices.
inline constexpr double kPositivityTol = 1e-10;

class Ket {
 public:
  /// Raw amplitudes; need not be normalized (see is_normalized()).
  /// Throws InvalidState on empty or non-finite input.
  explicit Ket(std::vector<cplx> amps, std::vector<std::string> labels = {});

  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amps() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  double norm_squared() const;
  double norm() const;
  bool is_normalized(double tol = kTol) const;

  /// Throws InvalidState if the norm is zero.
  Ket normalized() const;
  Ket scaled(cplx factor) const;
  Ket with_labels(std::vector<std::string> labels) const;

  friend Ket operator+(const Ket& a, const Ket& b);
  friend Ket operator-(const Ket& a, const Ket& b);

 private:
  std::vector<cplx> amps_;
  std::vector<std::string> labels_;
};

/// Square complex matrix, row-major.
class Operator {
 public:
  Operator(std::size_t dim, std::vector<cplx> entries);
  Operator(std::initializer_list<std::initializer_list<cplx>> rows);

  static Operator zero(std::size_t dim);
  static Operator identity(std::size_t dim);
  /// Validates Hermiticity within kTol and sets the flag; throws InvalidState.
  static Operator hermitian(std::size_t dim, std::vector<cplx> entries);

  std::size_t dim() const { return dim_; }
  cplx operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const cplx> entries() const { return entries_; }

  bool hermitian_flag() const { return hermitian_flag_; }
  bool is_hermitian(double tol = kTol) const;
  /// Returns a copy with the flag set; throws InvalidState if not Hermitian.
  Operator as_hermitian() const;

  cplx trace() const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(cplx s, const Operator& a);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> entries_;
  bool hermitian_flag_ = false;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Operator& a, const Operator& b);
double max_abs_diff(const Ket& a, const Ket& b);

class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace within kTol and positivity within
  /// kPositivityTol; throws InvalidState.
  explicit DensityMatrix(Operator rho);

  static DensityMatrix pure(const Ket& k);

  std::size_t dim() const { return rho_.dim(); }
  const Operator& op() const { return rho_; }
  cplx operator()(std::size_t row, std::size_t col) const { return rho_(row, col); }

  /// Tr(rho^2).
  double purity() const;
  /// <psi|rho|psi> for a normalized psi.
  double fidelity(const Ket& psi) const;
  /// max |rho_ij| over i != j.
  double max_offdiagonal() const;

 private:
  Operator rho_;
};

/// Hermitian observable as eigenvalue/projector pairs.
class SpectralOperator {
 public:
  struct Branch {
    double eigenvalue;
    Operator projector;
  };

  /// Validates idempotence, mutual orthogonality and completeness within
  /// kTol; throws InvalidState.
  explicit SpectralOperator(std::vector<Branch> branches);

  /// Single branch: value * identity.
  static SpectralOperator scalar(std::size_t dim, double value);

  std::size_t dim() const { return branches_.front().projector.dim(); }
  const std::vector<Branch>& branches() const { return branches_; }

  /// Sum of eigenvalue * projector.
  Operator dense() const;

 private:
  std::vector<Branch> branches_;
};

/// Closed-form spectrum of a 2x2 Hermitian matrix.
struct Eigen2 {
  /// Descending.
  std::array<double, 2> values;
  /// Orthonormal eigenvectors matching `values`; first nonzero component of
  /// each is real and positive. A degenerate spectrum returns {|0>, |1>}.
  std::array<Ket, 2> vectors;
  bool degenerate;
};

/// Throws DimensionMismatch for dim != 2 and InvalidState if not Hermitian.
Eigen2 eigh2(const Operator& a);

/// A bipartite split of a dim = first * second space.
struct Factorization {
  std::size_t first = 2;
  std::size_t second = 2;
};

enum class Subsystem { first, second };

Ket tensor(const Ket& a, const Ket& b);
Operator tensor(const Operator& a, const Operator& b);
/// Branch-wise product: eigenvalues multiply, projectors tensor.
SpectralOperator tensor(const SpectralOperator& a, const SpectralOperator& b);

/// Reduced state on `keep`. Throws DimensionMismatch when the dimension does
/// not factor as declared.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep, Factorization dims = {});

/// <a|b>, conjugating the left argument.
cplx inner(const Ket& a, const Ket& b);
/// |a><b|.
Operator outer(const Ket& a, const Ket& b);
Ket apply(const Operator& a, const Ket& k);
/// Tr(A rho).
cplx expectation(const Operator& a, const DensityMatrix& rho);
Operator dagger(const Operator& a);

/// Single-photon and two-photon constants in the {H, V} / {HH, HV, VH, VV}
/// basis.
namespace basis {
Ket h();
Ket v();
Ket hh();
Ket hv();
Ket vh();
Ket vv();
Operator proj_h();
Operator proj_v();
inline constexpr std::size_t kH = 0;
inline constexpr std::size_t kV = 1;
/// Index of |ab> in the two-photon basis.
constexpr std::size_t pair_index(std::size_t photon1, std::size_t photon2) { return 2 * photon1 + photon2; }
}  // namespace basis

}  // namespace hardyweak

#endif  // HARDYWEAK_QCORE_HPP
