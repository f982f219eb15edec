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
#include "hardyweak/extrapolation.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hardyweak {

double richardson_linear(std::span<const double> steps, std::span<const double> values) {
  if (steps.size() != values.size() || steps.size() < 2) {
    throw std::invalid_argument("richardson_linear: need >= 2 matching steps and values");
  }
  const std::size_t n = steps.size();
  const double h = steps[n - 1];
  const double h_prev = steps[n - 2];
  if (!(h > 0.0) || !(h_prev > h)) throw std::invalid_argument("richardson_linear: steps must decrease");
  // Eliminate c1 from v(h) = v0 + c1 h.
  return (h_prev * values[n - 1] - h * values[n - 2]) / (h_prev - h);
}

ConvergenceFit fit_convergence_order(std::span<const double> steps, std::span<const double> abs_errors) {
  if (steps.size() != abs_errors.size()) throw std::invalid_argument("fit_convergence_order: size mismatch");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (abs_errors[i] > kExactErrorFloor) {
      xs.push_back(std::log(steps[i]));
      ys.push_back(std::log(abs_errors[i]));
    }
  }
  ConvergenceFit fit;
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    if (xs.size() == 1) fit.order = 0.0;  // one nonzero error among exact ones: no decay measurable
    return fit;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.order = sxy / sxx;
  return fit;
}

}  // namespace hardyweak
