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

/// Entanglement witnesses W = (d-k) Pi_0 + sum_{i<=k} Pi_{pi(i)} - P+ and a
/// brute-force search over (k, pi) for one that detects a given state.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbell/bell_states.hpp"
#include "qbell/matrix.hpp"

namespace qbell {

/// A witness value below this counts as a detection.
inline constexpr double kDetectionTol = 1e-12;

struct WitnessSpec {
  std::size_t d = 0;
  std::size_t k = 1;
  std::vector<std::size_t> pi;  ///< permutation of {1, ..., d-1}; pi[i-1] holds pi(i)

  static WitnessSpec identity(std::size_t d, std::size_t k) {
    WitnessSpec s{d, k, std::vector<std::size_t>(d - 1)};
    std::iota(s.pi.begin(), s.pi.end(), std::size_t{1});
    return s;
  }

  void validate() const {
    require_dim(d, "WitnessSpec");
    if (k < 1 || k > d - 1)
      throw std::invalid_argument("WitnessSpec: k=" + std::to_string(k) + " outside [1, " +
                                  std::to_string(d - 1) + "]");
    if (pi.size() != d - 1)
      throw std::invalid_argument("WitnessSpec: permutation needs " + std::to_string(d - 1) +
                                  " entries, got " + std::to_string(pi.size()));
    std::vector<bool> seen(d, false);
    for (std::size_t v : pi) {
      if (v < 1 || v > d - 1 || seen[v])
        throw std::invalid_argument("WitnessSpec: pi is not a permutation of {1..d-1}");
      seen[v] = true;
    }
  }

  friend bool operator==(const WitnessSpec&, const WitnessSpec&) = default;
};

inline ComplexMatrix witness_matrix(const WitnessSpec& spec) {
  spec.validate();
  const std::size_t d = spec.d;
  ComplexMatrix w = pi_state(d, 0) * complex(static_cast<double>(d - spec.k));
  for (std::size_t i = 0; i < spec.k; ++i) w += pi_state(d, spec.pi[i]);
  w -= max_entangled(d);
  return w;
}

/// (I (x) R) P+ with the reduction map R(X) = I Tr X - X on the second factor.
inline ComplexMatrix reduction_witness(std::size_t d) {
  const ComplexMatrix p = max_entangled(d);
  ComplexMatrix out(d * d, d * d);
  // P+ = sum_{ij} |i><j| (x) E_ij / d; apply R to each block E_ij / d.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      complex block_trace = 0.0;
      for (std::size_t a = 0; a < d; ++a) block_trace += p(i * d + a, j * d + a);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const complex identity_part = (a == b) ? block_trace : complex{};
          out(i * d + a, j * d + b) = identity_part - p(i * d + a, j * d + b);
        }
    }
  return out;
}

/// Tr(rho W)
inline double evaluate(const ComplexMatrix& rho, const WitnessSpec& spec) {
  const ComplexMatrix w = witness_matrix(spec);
  if (rho.rows() != w.rows() || rho.cols() != w.cols())
    throw std::invalid_argument("evaluate: state is " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()) + ", witness is " +
                                std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  return trace_product(rho, w).real();
}

/// Haar-distributed unit vector from normalized complex Gaussians.
template <class Rng>
Ket random_unit_ket(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<complex> amps(dim);
  for (auto& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = {re, im};
  }
  Ket k(std::move(amps));
  const double n = k.norm();
  for (auto& a : k.amplitudes) a /= n;
  return k;
}

/// Minimum of <a (x) b| W |a (x) b> over random unit product vectors. A
/// falsification test only: a negative result disproves block positivity,
/// a non-negative one proves nothing.
inline double expectation_min_over_products(const ComplexMatrix& w, std::size_t d,
                                            std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("product sampling needs at least one sample");
  if (w.rows() != d * d || w.cols() != d * d)
    throw std::invalid_argument("product sampling: operator is not d^2 x d^2");
  std::mt19937_64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  std::vector<complex> wv(d * d);
  for (std::size_t s = 0; s < samples; ++s) {
    const Ket a = random_unit_ket(d, rng);
    const Ket b = random_unit_ket(d, rng);
    const Ket ab = kron(a, b);
    complex value = 0.0;
    for (std::size_t i = 0; i < d * d; ++i) {
      complex row = 0.0;
      for (std::size_t j = 0; j < d * d; ++j) row += w(i, j) * ab.amplitudes[j];
      value += std::conj(ab.amplitudes[i]) * row;
    }
    best = std::min(best, value.real());
  }
  return best;
}

inline double product_positivity_check(const WitnessSpec& spec, std::size_t samples,
                                       std::uint64_t seed) {
  return expectation_min_over_products(witness_matrix(spec), spec.d, samples, seed);
}

struct DetectionResult {
  bool detected = false;
  std::optional<WitnessSpec> best_spec;
  double best_value = std::numeric_limits<double>::infinity();
};

/// Minimises Tr(rho W) over every k in 1..d-1 and every permutation of
/// {1..d-1}. The first minimum in (k, lexicographic pi) order wins ties.
inline DetectionResult detect(const ComplexMatrix& rho, std::size_t d) {
  require_dim(d, "detect");
  if (rho.rows() != d * d || rho.cols() != d * d)
    throw std::invalid_argument("detect: state is not " + std::to_string(d * d) + "x" +
                                std::to_string(d * d));

  // Tr(rho W) is linear in the projectors, so only these d + 1 traces are needed.
  std::vector<double> pi_traces(d);
  for (std::size_t n = 0; n < d; ++n) pi_traces[n] = trace_product(rho, pi_state(d, n)).real();
  const double plus_trace = trace_product(rho, max_entangled(d)).real();

  DetectionResult result;
  for (std::size_t k = 1; k < d; ++k) {
    WitnessSpec spec = WitnessSpec::identity(d, k);
    do {
      double value = static_cast<double>(d - k) * pi_traces[0] - plus_trace;
      for (std::size_t i = 0; i < k; ++i) value += pi_traces[spec.pi[i]];
      if (value < result.best_value) {
        result.best_value = value;
        result.best_spec = spec;
      }
    } while (std::next_permutation(spec.pi.begin(), spec.pi.end()));
  }
  result.detected = result.best_value < -kDetectionTol;
  return result;
}

}  // namespace qbell
