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

#include "hardyweak/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "hardyweak/errors.hpp"

namespace hardyweak {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

// Semidefiniteness of a Hermitian matrix by diagonally pivoted LDL^H. Once
// every remaining pivot is below tol, the trailing block is bounded with a
// Gershgorin disc instead of being factored further.
bool is_positive_semidefinite(const Operator& a, double tol) {
  const std::size_t n = a.dim();
  std::vector<cplx> m(a.entries().begin(), a.entries().end());
  std::vector<std::size_t> rest(n);
  std::iota(rest.begin(), rest.end(), 0);
  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return m[i * n + j]; };

  while (!rest.empty()) {
    auto pivot_it = std::max_element(rest.begin(), rest.end(), [&](std::size_t i, std::size_t j) {
      return at(i, i).real() < at(j, j).real();
    });
    const std::size_t p = *pivot_it;
    const double d = at(p, p).real();
    if (d < -tol) return false;
    if (d <= tol) {
      double min_diag = d;
      double max_row_off = 0.0;
      for (std::size_t i : rest) {
        min_diag = std::min(min_diag, at(i, i).real());
        double row = 0.0;
        for (std::size_t j : rest) {
          if (i != j) row += std::abs(at(i, j));
        }
        max_row_off = std::max(max_row_off, row);
      }
      return min_diag - max_row_off >= -tol;
    }
    rest.erase(pivot_it);
    for (std::size_t i : rest) {
      for (std::size_t j : rest) {
        at(i, j) -= at(i, p) * at(p, j) / d;
      }
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(std::vector<cplx> amps, std::vector<std::string> labels)
    : amps_(std::move(amps)), labels_(std::move(labels)) {
  if (amps_.empty()) throw InvalidState("Ket: empty amplitude vector");
  if (!std::all_of(amps_.begin(), amps_.end(), finite)) {
    throw InvalidState("Ket: non-finite amplitude");
  }
  if (!labels_.empty() && labels_.size() != amps_.size()) {
    throw DimensionMismatch("Ket: label count does not match dimension");
  }
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionMismatch("Ket::basis: index out of range");
  std::vector<cplx> amps(dim);
  amps[index] = 1.0;
  return Ket(std::move(amps));
}

double Ket::norm_squared() const {
  double s = 0.0;
  for (cplx z : amps_) s += std::norm(z);
  return s;
}

double Ket::norm() const { return std::sqrt(norm_squared()); }

bool Ket::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidState("Ket::normalized: zero vector");
  return scaled(1.0 / n);
}

Ket Ket::scaled(cplx factor) const {
  std::vector<cplx> out(amps_);
  for (cplx& z : out) z *= factor;
  return Ket(std::move(out), labels_);
}

Ket Ket::with_labels(std::vector<std::string> labels) const { return Ket(amps_, std::move(labels)); }

Ket operator+(const Ket& a, const Ket& b) {
  require_same_dim(a.dim(), b.dim(), "Ket +");
  std::vector<cplx> out(a.amps_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.amps_[i];
  return Ket(std::move(out), a.labels_);
}

Ket operator-(const Ket& a, const Ket& b) { return a + b.scaled(-1.0); }

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(std::size_t dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw InvalidState("Operator: zero dimension");
  if (entries_.size() != dim_ * dim_) throw DimensionMismatch("Operator: entry count is not dim^2");
  if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
    throw InvalidState("Operator: non-finite entry");
  }
}

Operator::Operator(std::initializer_list<std::initializer_list<cplx>> rows) : dim_(rows.size()) {
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionMismatch("Operator: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  if (dim_ == 0) throw InvalidState("Operator: zero dimension");
}

Operator Operator::zero(std::size_t dim) { return Operator(dim, std::vector<cplx>(dim * dim)); }

Operator Operator::identity(std::size_t dim) {
  std::vector<cplx> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  Operator out(dim, std::move(e));
  out.hermitian_flag_ = true;
  return out;
}

Operator Operator::hermitian(std::size_t dim, std::vector<cplx> entries) {
  return Operator(dim, std::move(entries)).as_hermitian();
}

bool Operator::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    }
  }
  return true;
}

Operator Operator::as_hermitian() const {
  if (!is_hermitian()) throw InvalidState("Operator: not Hermitian within tolerance");
  Operator out(*this);
  out.hermitian_flag_ = true;
  return out;
}

cplx Operator::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a.dim_, b.dim_, "Operator +");
  std::vector<cplx> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
  Operator out(a.dim_, std::move(e));
  out.hermitian_flag_ = a.hermitian_flag_ && b.hermitian_flag_;
  return out;
}

Operator operator-(const Operator& a, const Operator& b) { return a + cplx(-1.0) * b; }

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a.dim_, b.dim_, "Operator *");
  const std::size_t n = a.dim_;
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] += aik * b(k, j);
    }
  }
  return Operator(n, std::move(e));
}

Operator operator*(cplx s, const Operator& a) {
  std::vector<cplx> e(a.entries_);
  for (cplx& z : e) z *= s;
  Operator out(a.dim_, std::move(e));
  out.hermitian_flag_ = a.hermitian_flag_ && s.imag() == 0.0;
  return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

double max_abs_diff(const Ket& a, const Ket& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Operator rho) : rho_(std::move(rho)) {
  if (!rho_.is_hermitian()) throw InvalidState("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > kTol) throw InvalidState("DensityMatrix: trace is not 1");
  bool positive = true;
  if (rho_.dim() == 2) {
    const Eigen2 e = eigh2(rho_);
    positive = e.values[1] >= -kPositivityTol;
  } else {
    positive = is_positive_semidefinite(rho_, kPositivityTol);
  }
  if (!positive) throw InvalidState("DensityMatrix: negative eigenvalue");
  rho_ = rho_.as_hermitian();
}

DensityMatrix DensityMatrix::pure(const Ket& k) {
  if (!k.is_normalized()) throw InvalidState("DensityMatrix::pure: ket is not normalized");
  return DensityMatrix(outer(k, k));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::fidelity(const Ket& psi) const {
  if (!psi.is_normalized()) throw InvalidState("DensityMatrix::fidelity: ket is not normalized");
  return inner(psi, apply(rho_, psi)).real();
}

double DensityMatrix::max_offdiagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (i != j) m = std::max(m, std::abs(rho_(i, j)));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// SpectralOperator

SpectralOperator::SpectralOperator(std::vector<Branch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw InvalidState("SpectralOperator: no branches");
  const std::size_t n = branches_.front().projector.dim();
  Operator sum = Operator::zero(n);
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const Operator& p = branches_[i].projector;
    require_same_dim(p.dim(), n, "SpectralOperator");
    if (!std::isfinite(branches_[i].eigenvalue)) throw InvalidState("SpectralOperator: non-finite eigenvalue");
    if (!p.is_hermitian() || max_abs_diff(p * p, p) > kTol) {
      throw InvalidState("SpectralOperator: projector is not idempotent");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs_diff(p * branches_[j].projector, Operator::zero(n)) > kTol) {
        throw InvalidState("SpectralOperator: projectors are not orthogonal");
      }
    }
    sum = sum + p;
  }
  if (max_abs_diff(sum, Operator::identity(n)) > kTol) {
    throw InvalidState("SpectralOperator: projectors are not complete");
  }
  for (Branch& b : branches_) b.projector = b.projector.as_hermitian();
}

SpectralOperator SpectralOperator::scalar(std::size_t dim, double value) {
  return SpectralOperator({{value, Operator::identity(dim)}});
}

Operator SpectralOperator::dense() const {
  Operator out = Operator::zero(dim());
  for (const Branch& b : branches_) out = out + cplx(b.eigenvalue) * b.projector;
  return out.as_hermitian();
}

// ---------------------------------------------------------------------------
// Closed-form 2x2 spectrum

namespace {

Ket phase_fixed(cplx x, cplx y) {
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  x /= n;
  y /= n;
  const cplx lead = std::abs(x) > kTol ? x : y;
  const cplx phase = std::conj(lead) / std::abs(lead);
  return Ket({x * phase, y * phase});
}

}  // namespace

Eigen2 eigh2(const Operator& a) {
  if (a.dim() != 2) throw DimensionMismatch("eigh2: operator is not 2x2");
  if (!a.is_hermitian()) throw InvalidState("eigh2: operator is not Hermitian");
  const double p = a(0, 0).real();
  const double r = a(1, 1).real();
  const cplx q = a(0, 1);
  const double mean = 0.5 * (p + r);
  const double half_gap = std::hypot(0.5 * (p - r), std::abs(q));
  const double hi = mean + half_gap;
  const double lo = mean - half_gap;

  if (half_gap <= kTol) {
    return Eigen2{{hi, lo}, {Ket::basis(2, 0), Ket::basis(2, 1)}, true};
  }
  // Eigenvector for `hi` from whichever row of (A - hi I) is better conditioned;
  // the second vector is its exact orthogonal complement.
  Ket top = (p >= r) ? phase_fixed(hi - r, std::conj(q)) : phase_fixed(q, hi - p);
  Ket bottom = phase_fixed(-std::conj(top[1]), std::conj(top[0]));
  return Eigen2{{hi, lo}, {top, bottom}, false};
}

// ---------------------------------------------------------------------------
// Products, traces, contractions

Ket tensor(const Ket& a, const Ket& b) {
  std::vector<cplx> out;
  out.reserve(a.dim() * b.dim());
  for (cplx x : a.amps()) {
    for (cplx y : b.amps()) out.push_back(x * y);
  }
  std::vector<std::string> labels;
  if (!a.labels().empty() && !b.labels().empty()) {
    for (const auto& la : a.labels()) {
      for (const auto& lb : b.labels()) labels.push_back(la + lb);
    }
  }
  return Ket(std::move(out), std::move(labels));
}

Operator tensor(const Operator& a, const Operator& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na * nb;
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) e[(i * nb + k) * n + (j * nb + l)] = aij * b(k, l);
      }
    }
  }
  Operator out(n, std::move(e));
  return (a.hermitian_flag() && b.hermitian_flag()) ? out.as_hermitian() : out;
}

SpectralOperator tensor(const SpectralOperator& a, const SpectralOperator& b) {
  std::vector<SpectralOperator::Branch> out;
  for (const auto& x : a.branches()) {
    for (const auto& y : b.branches()) {
      out.push_back({x.eigenvalue * y.eigenvalue, tensor(x.projector, y.projector)});
    }
  }
  return SpectralOperator(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep, Factorization dims) {
  if (dims.first == 0 || dims.second == 0 || dims.first * dims.second != rho.dim()) {
    throw DimensionMismatch("partial_trace: dimension " + std::to_string(rho.dim()) +
                            " does not factor as " + std::to_string(dims.first) + "x" +
                            std::to_string(dims.second));
  }
  const std::size_t da = dims.first;
  const std::size_t db = dims.second;
  const std::size_t n = da * db;
  const bool keep_first = keep == Subsystem::first;
  const std::size_t kept = keep_first ? da : db;
  const std::size_t traced = keep_first ? db : da;
  std::vector<cplx> e(kept * kept);
  for (std::size_t i = 0; i < kept; ++i) {
    for (std::size_t j = 0; j < kept; ++j) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < traced; ++t) {
        const std::size_t row = keep_first ? i * db + t : t * db + i;
        const std::size_t col = keep_first ? j * db + t : t * db + j;
        s += rho.op().entries()[row * n + col];
      }
      e[i * kept + j] = s;
    }
  }
  return DensityMatrix(Operator(kept, std::move(e)));
}

cplx inner(const Ket& a, const Ket& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Operator outer(const Ket& a, const Ket& b) {
  require_same_dim(a.dim(), b.dim(), "outer");
  const std::size_t n = a.dim();
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = a[i] * std::conj(b[j]);
  }
  return Operator(n, std::move(e));
}

Ket apply(const Operator& a, const Ket& k) {
  require_same_dim(a.dim(), k.dim(), "apply");
  const std::size_t n = a.dim();
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += a(i, j) * k[j];
  }
  return Ket(std::move(out), k.labels());
}

cplx expectation(const Operator& a, const DensityMatrix& rho) { return (a * rho.op()).trace(); }

Operator dagger(const Operator& a) {
  const std::size_t n = a.dim();
  std::vector<cplx> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e[i * n + j] = std::conj(a(j, i));
  }
  return Operator(n, std::move(e));
}

// ---------------------------------------------------------------------------

namespace basis {

Ket h() { return Ket({1.0, 0.0}, {"H", "V"}); }
Ket v() { return Ket({0.0, 1.0}, {"H", "V"}); }
Ket hh() { return tensor(h(), h()); }
Ket hv() { return tensor(h(), v()); }
Ket vh() { return tensor(v(), h()); }
Ket vv() { return tensor(v(), v()); }
Operator proj_h() { return outer(h(), h()).as_hermitian(); }
Operator proj_v() { return outer(v(), v()).as_hermitian(); }

}  // namespace basis

}  // namespace hardyweak
