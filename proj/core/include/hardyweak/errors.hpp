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

#ifndef HARDYWEAK_ERRORS_HPP
#define HARDYWEAK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hardyweak {

/// Operand dimensions do not agree (or a declared factorization does not fit).
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A value violates a type invariant (non-Hermitian, unnormalized, NaN, ...).
class InvalidState : public std::invalid_argument {
 public:
  explicit InvalidState(const std::string& what) : std::invalid_argument(what) {}
};

/// The post-selected state is orthogonal to the pre-selected one, so the
/// weak value (or the post-selected pointer readout) is undefined.
class OrthogonalPostSelection : public std::domain_error {
 public:
  explicit OrthogonalPostSelection(const std::string& what) : std::domain_error(what) {}
};

/// A two-photon operator is not of the form X (x) I or I (x) X.
class NotSeparable : public std::domain_error {
 public:
  explicit NotSeparable(const std::string& what) : std::domain_error(what) {}
};

}  // namespace hardyweak

#endif  // HARDYWEAK_ERRORS_HPP
