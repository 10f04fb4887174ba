// Copyright 2026 The qbell Authors
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

#pragma once

// Seeded random inputs for property checks.

#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "qbell/bell_states.hpp"

namespace qbell::sampling {

/// Uniform point of the (n-1)-simplex.
template <class Rng>
std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (auto& v : x) sum += (v = expo(rng));
  for (auto& v : x) v /= sum;
  return x;
}

template <class Rng>
FamWeights random_fam_weights(std::size_t d, Rng& rng) {
  return FamWeights{d, random_simplex(d, rng)};
}

template <class Rng>
FamGWeights random_famg_weights(std::size_t d, Rng& rng) {
  return FamGWeights{d, random_simplex(d + 1, rng)};
}

/// Random weights with lambda_i >= lambda_d for every i < d.
template <class Rng>
FamWeights random_separable_fam_weights(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lambda_d = unit(rng) / static_cast<double>(d);
  const std::vector<double> excess = random_simplex(d - 1, rng);
  const double spare = 1.0 - static_cast<double>(d) * lambda_d;
  FamWeights w{d, std::vector<double>(d, lambda_d)};
  for (std::size_t i = 0; i + 1 < d; ++i) w.lambdas[i] += spare * excess[i];
  return w;
}

/// Phases drawn uniformly from [0, 2 pi).
template <class Rng>
PhaseVector random_phases(std::size_t d, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  PhaseVector x{std::vector<double>(d)};
  for (auto& v : x.x) v = angle(rng);
  return x;
}

}  // namespace qbell::sampling
