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

/// Weyl operators, Bell projectors and the Bell-diagonal state families that
/// are invariant under U_x (x) conj(U_x) for diagonal unitaries U_x.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qbell/matrix.hpp"

namespace qbell {

inline constexpr std::size_t kMinDim = 2;
inline constexpr std::size_t kMaxDim = 8;
/// Slack allowed on weight normalization.
inline constexpr double kWeightSumTol = 1e-12;

inline void require_dim(std::size_t d, const char* what, std::size_t min_dim = kMinDim) {
  if (d < min_dim || d > kMaxDim) {
    throw std::invalid_argument(std::string(what) + ": dimension d=" + std::to_string(d) +
                                " outside supported range [" + std::to_string(min_dim) + ", " +
                                std::to_string(kMaxDim) + "]");
  }
}

inline void require_index(std::size_t index, std::size_t d, const char* what) {
  if (index >= d) {
    throw std::invalid_argument(std::string(what) + ": index " + std::to_string(index) +
                                " out of range for d=" + std::to_string(d));
  }
}

/// exp(2 pi i * power / d)
inline complex root_of_unity(std::size_t d, long long power) {
  const long long dd = static_cast<long long>(d);
  const long long r = ((power % dd) + dd) % dd;
  // Exact values at the quarter turns keep the small-d operators free of
  // rounding noise.
  if (4 * r % dd == 0) {
    switch (4 * r / dd) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(dd);
  return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------------------
// Weight types

/// p_mn of a Bell-diagonal state, stored row-major (m * d + n).
struct BellSpectrum {
  std::size_t d = 0;
  std::vector<double> p;

  double operator()(std::size_t m, std::size_t n) const { return p[m * d + n]; }

  void validate() const {
    require_dim(d, "BellSpectrum");
    if (p.size() != d * d) throw std::invalid_argument("BellSpectrum: expected d*d weights");
    double sum = 0.0;
    for (double x : p) {
      if (!(x >= 0.0)) throw std::invalid_argument("BellSpectrum: negative weight");
      sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
      throw std::invalid_argument("BellSpectrum: weights sum to " + std::to_string(sum));
  }
};

namespace detail {
inline void validate_simplex(std::span<const double> w, const char* what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0)
      throw std::invalid_argument(std::string(what) + ": weight " + std::to_string(i) +
                                  " is negative or not finite");
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument(std::string(what) + ": weights sum to " + std::to_string(sum) +
                                ", expected 1");
}
}  // namespace detail

/// Weights (lambda_1, ..., lambda_d) of sum_{i<d} lambda_i Pi_i + lambda_d P+.
struct FamWeights {
  std::size_t d = 0;
  std::vector<double> lambdas;  ///< lambdas[i-1] holds lambda_i

  /// lambda_i for 1 <= i <= d
  double lambda(std::size_t i) const { return lambdas.at(i - 1); }

  void validate() const {
    require_dim(d, "FamWeights");
    if (lambdas.size() != d)
      throw std::invalid_argument("FamWeights: expected " + std::to_string(d) + " weights, got " +
                                  std::to_string(lambdas.size()));
    detail::validate_simplex(lambdas, "FamWeights");
  }
};

/// Weights (lambda_0, ..., lambda_d) of sum_{i<d} lambda_i Pi_i + lambda_d P+.
struct FamGWeights {
  std::size_t d = 0;
  std::vector<double> lambdas;  ///< lambdas[i] holds lambda_i

  double lambda(std::size_t i) const { return lambdas.at(i); }

  void validate() const {
    require_dim(d, "FamGWeights");
    if (lambdas.size() != d + 1)
      throw std::invalid_argument("FamGWeights: expected " + std::to_string(d + 1) +
                                  " weights, got " + std::to_string(lambdas.size()));
    detail::validate_simplex(lambdas, "FamGWeights");
  }

  static FamGWeights from_fam(const FamWeights& w) {
    FamGWeights g{w.d, {0.0}};
    g.lambdas.insert(g.lambdas.end(), w.lambdas.begin(), w.lambdas.end());
    return g;
  }
};

/// Coefficients of sum_m (mu_m Pi_m + nu_m P_m0). Positivity is not implied.
struct FamUUWeights {
  std::size_t d = 0;
  std::vector<double> mu;
  std::vector<double> nu;

  void validate() const {
    require_dim(d, "FamUUWeights");
    if (mu.size() != d || nu.size() != d)
      throw std::invalid_argument("FamUUWeights: mu and nu need d entries each");
    double sum = 0.0;
    for (double x : mu) sum += x;
    for (double x : nu) sum += x;
    if (!std::isfinite(sum) || std::abs(sum - 1.0) > kWeightSumTol)
      throw std::invalid_argument("FamUUWeights: coefficients sum to " + std::to_string(sum));
  }
};

/// Phases x_0..x_{d-1} of the diagonal unitary U_x.
struct PhaseVector {
  std::vector<double> x;
  std::size_t d() const noexcept { return x.size(); }
};

// ---------------------------------------------------------------------------
// Operators

/// S|k> = |k+1 mod d>
inline ComplexMatrix shift_operator(std::size_t d) {
  require_dim(d, "shift_operator");
  ComplexMatrix s(d, d);
  for (std::size_t k = 0; k < d; ++k) s((k + 1) % d, k) = 1.0;
  return s;
}

/// U_mn|k> = omega^{mk} |k+n>, omega = exp(2 pi i/d).
inline ComplexMatrix weyl_unitary(std::size_t d, std::size_t m, std::size_t n) {
  require_dim(d, "weyl_unitary");
  require_index(m, d, "weyl_unitary");
  require_index(n, d, "weyl_unitary");
  ComplexMatrix u(d, d);
  for (std::size_t k = 0; k < d; ++k)
    u((k + n) % d, k) = root_of_unity(d, static_cast<long long>(m * k));
  return u;
}

/// Canonical maximally entangled projector P+ = (1/d) sum_ij |ii><jj|.
inline ComplexMatrix max_entangled(std::size_t d) {
  require_dim(d, "max_entangled");
  ComplexMatrix p(d * d, d * d);
  const double w = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) p(i * d + i, j * d + j) = w;
  return p;
}

/// P_mn = (I (x) U_mn) P+ (I (x) U_mn)^dagger.
inline ComplexMatrix bell_projector(std::size_t d, std::size_t m, std::size_t n) {
  const ComplexMatrix local = kron(ComplexMatrix::identity(d), weyl_unitary(d, m, n));
  return local * max_entangled(d) * local.adjoint();
}

/// Pi_n = (1/d) sum_i |i, i+n><i, i+n|.
inline ComplexMatrix pi_state(std::size_t d, std::size_t n) {
  require_dim(d, "pi_state");
  require_index(n, d, "pi_state");
  ComplexMatrix p(d * d, d * d);
  const double w = 1.0 / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t idx = i * d + (i + n) % d;
    p(idx, idx) = w;
  }
  return p;
}

inline ComplexMatrix bell_diagonal(const BellSpectrum& spec) {
  spec.validate();
  const std::size_t d = spec.d;
  ComplexMatrix rho(d * d, d * d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n)
      if (spec(m, n) != 0.0) rho.add_scaled(spec(m, n), bell_projector(d, m, n));
  return rho;
}

inline ComplexMatrix fam_g_state(const FamGWeights& w) {
  w.validate();
  const std::size_t d = w.d;
  ComplexMatrix rho(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    if (w.lambda(i) != 0.0) rho.add_scaled(w.lambda(i), pi_state(d, i));
  if (w.lambda(d) != 0.0) rho.add_scaled(w.lambda(d), max_entangled(d));
  return rho;
}

inline ComplexMatrix fam_state(const FamWeights& w) {
  w.validate();
  return fam_g_state(FamGWeights::from_fam(w));
}

/// sum_m (mu_m Pi_m + nu_m P_m0); Hermitian with unit trace, not necessarily positive.
inline ComplexMatrix fam_uu_state(const FamUUWeights& w) {
  w.validate();
  const std::size_t d = w.d;
  ComplexMatrix rho(d * d, d * d);
  for (std::size_t m = 0; m < d; ++m) {
    if (w.mu[m] != 0.0) rho.add_scaled(w.mu[m], pi_state(d, m));
    if (w.nu[m] != 0.0) rho.add_scaled(w.nu[m], bell_projector(d, m, 0));
  }
  return rho;
}

/// Weights of the isotropic state (1 - l)/d^2 I + l P+ in the generalized family.
inline FamGWeights isotropic_weights(std::size_t d, double lambda_d) {
  require_dim(d, "isotropic_weights");
  if (!(lambda_d >= 0.0 && lambda_d <= 1.0))
    throw std::invalid_argument("isotropic: lambda_d=" + std::to_string(lambda_d) +
                                " outside [0, 1]");
  FamGWeights w{d, std::vector<double>(d + 1, (1.0 - lambda_d) / static_cast<double>(d))};
  w.lambdas[d] = lambda_d;
  return w;
}

inline ComplexMatrix isotropic_state(std::size_t d, double lambda_d) {
  const FamGWeights w = isotropic_weights(d, lambda_d);
  const double dd = static_cast<double>(d);
  ComplexMatrix rho = ComplexMatrix::identity(d * d) * complex((1.0 - lambda_d) / (dd * dd));
  rho.add_scaled(lambda_d, max_entangled(d));
  return rho;
}

/// One-parameter family with lambda_1 = alpha/N, lambda_{d-1} = ((d-1)^2+1-alpha)/N and
/// every other weight (d-1)/N, N = (d-1)(2d-3)+1. Reduces to the Horodecki
/// 3x3 construction at d = 3.
inline FamWeights horodecki_family(std::size_t d, double alpha) {
  require_dim(d, "horodecki_family", 3);
  const double dm1 = static_cast<double>(d - 1);
  const double alpha_max = dm1 * dm1 + 1.0;
  if (!(alpha >= 0.0 && alpha <= alpha_max))
    throw std::invalid_argument("horodecki_family: alpha=" + std::to_string(alpha) +
                                " outside [0, " + std::to_string(alpha_max) + "]");
  const double norm = dm1 * (2.0 * static_cast<double>(d) - 3.0) + 1.0;
  FamWeights w{d, std::vector<double>(d, dm1 / norm)};
  w.lambdas[0] = alpha / norm;
  w.lambdas[d - 2] = (alpha_max - alpha) / norm;
  return w;
}

/// Weights proportional to (eps, 1, ..., 1, 1/eps, 1), normalized to sum 1.
/// lambda_1 * lambda_{d-1} == lambda_d^2 for every eps.
inline FamWeights epsilon_family(std::size_t d, double epsilon) {
  require_dim(d, "epsilon_family", 3);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon_family: epsilon must be positive and finite");
  const double norm = static_cast<double>(d) - 2.0 + epsilon + 1.0 / epsilon;
  FamWeights w{d, std::vector<double>(d, 1.0 / norm)};
  w.lambdas[0] = epsilon / norm;
  w.lambdas[d - 2] = 1.0 / (epsilon * norm);
  return w;
}

/// The uniform point of the family: (1/d)(sum_{i>=1} Pi_i + P+).
inline FamWeights uniform_fam_weights(std::size_t d) {
  require_dim(d, "uniform_fam_weights");
  return FamWeights{d, std::vector<double>(d, 1.0 / static_cast<double>(d))};
}

// ---------------------------------------------------------------------------
// Symmetry

/// diag(exp(i x_0), ..., exp(i x_{d-1}))
inline ComplexMatrix abelian_unitary(const PhaseVector& x) {
  ComplexMatrix u(x.d(), x.d());
  for (std::size_t k = 0; k < x.d(); ++k) {
    if (!std::isfinite(x.x[k])) throw std::invalid_argument("abelian_unitary: non-finite phase");
    u(k, k) = std::polar(1.0, x.x[k]);
  }
  return u;
}

/// Max-entry norm of [U_x (x) conj(U_x), rho]; zero for invariant operators.
inline double check_symmetry(const ComplexMatrix& rho, const PhaseVector& x) {
  const std::size_t d = x.d();
  if (d == 0 || rho.rows() != d * d || rho.cols() != d * d)
    throw std::invalid_argument("check_symmetry: operator is not d^2 x d^2 for d=" +
                                std::to_string(d));
  const ComplexMatrix u = abelian_unitary(x);
  return commutator_norm(kron(u, u.conjugate()), rho);
}

}  // namespace qbell
