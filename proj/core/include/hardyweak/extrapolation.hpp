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
#ifndef HARDYWEAK_EXTRAPOLATION_HPP
#define HARDYWEAK_EXTRAPOLATION_HPP

#include <optional>
#include <span>

namespace hardyweak {

/// Errors at or below this are treated as exact zeros by the order fit.
inline constexpr double kExactErrorFloor = 1e-13;

/// Richardson extrapolation to step 0 from the two smallest steps, assuming a
/// leading error term linear in the step. `steps` must be strictly
/// decreasing and positive; `values` has the same length (>= 2).
double richardson_linear(std::span<const double> steps, std::span<const double> values);

/// Result of a least-squares fit of log|error| against log(step).
struct ConvergenceFit {
  /// Slope of the log-log regression. Empty when every error is at or below
  /// kExactErrorFloor (the sequence is exact; no order is defined).
  std::optional<double> order;
  /// Number of points used (errors above the floor).
  int points_used = 0;
  bool exact() const { return !order.has_value() && points_used == 0; }
};

/// Fits |error| ~ C * step^order. Points whose error is at or below
/// kExactErrorFloor are dropped. No remaining points means exact; a single
/// remaining point reports order 0.
ConvergenceFit fit_convergence_order(std::span<const double> steps, std::span<const double> abs_errors);

}  // namespace hardyweak

#endif  // HARDYWEAK_EXTRAPOLATION_HPP
