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

/// Built-in invariant suites, run by `qbell selftest`.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbell/bell_states.hpp"
#include "qbell/classify.hpp"
#include "qbell/matrix.hpp"
#include "qbell/sampling.hpp"
#include "qbell/witnesses.hpp"

namespace qbell::selftest {

struct Options {
  std::size_t d_max = 5;
  std::uint64_t seed = 42;
  double tol_eig = kEigTol;
  JacobiOptions jacobi{};
  std::size_t oracle_samples = 200;
  std::size_t product_samples = 2000;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }
  void check(bool ok, const std::string& what) {
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.detail = what;
    }
  }
  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

inline std::string at_d(const char* what, std::size_t d) {
  return std::string(what) + " (d=" + std::to_string(d) + ")";
}

/// Eigenvalues of the partial transpose of the generalized family in closed
/// form: (lambda_0 + lambda_d)/d on |ii>, and the 2x2 blocks
/// [[lambda_n, lambda_d], [lambda_d, lambda_{d-n}]]/d on {|i,i+n>, |i+n,i>}.
inline double pt_min_eig_closed_form(const FamGWeights& w) {
  const std::size_t d = w.d;
  const double dd = static_cast<double>(d);
  const double ld = w.lambda(d);
  double best = (w.lambda(0) + ld) / dd;
  for (std::size_t n = 1; n < d; ++n) {
    const double a = w.lambda(n), b = w.lambda(d - n);
    best = std::min(best, (a + b - std::sqrt((a - b) * (a - b) + 4.0 * ld * ld)) / (2.0 * dd));
  }
  return best;
}

}  // namespace detail

inline SuiteResult projector_algebra(const Options& opts) {
  detail::Recorder rec("projector-algebra");
  for (std::size_t d = 2; d <= opts.d_max; ++d) {
    const std::size_t n2 = d * d;
    const double dd = static_cast<double>(d);
    ComplexMatrix pi_sum(n2, n2);
    for (std::size_t m = 0; m < d; ++m) {
      const ComplexMatrix pm = pi_state(d, m);
      pi_sum += pm;
      for (std::size_t n = 0; n < d; ++n) {
        const ComplexMatrix expected = m == n ? pm * complex(1.0 / dd) : ComplexMatrix(n2, n2);
        rec.check(max_abs_diff(pm * pi_state(d, n), expected) <= 1e-12,
                  detail::at_d("Pi_m Pi_n != delta_mn Pi_n / d", d));
      }
    }
    rec.check(max_abs_diff(pi_sum, ComplexMatrix::identity(n2) * complex(1.0 / dd)) <= 1e-12,
              detail::at_d("sum Pi_n != I/d", d));

    std::vector<ComplexMatrix> bell;
    ComplexMatrix bell_sum(n2, n2);
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n) {
        bell.push_back(bell_projector(d, m, n));
        bell_sum += bell.back();
      }
    rec.check(max_abs_diff(bell_sum, ComplexMatrix::identity(n2)) <= 1e-12,
              detail::at_d("Bell projectors are not complete", d));
    for (std::size_t a = 0; a < bell.size(); ++a)
      for (std::size_t b = a; b < bell.size(); ++b) {
        const double expected = a == b ? 1.0 : 0.0;
        rec.check(std::abs(trace_product(bell[a], bell[b]) - expected) <= 1e-12,
                  detail::at_d("Bell projectors are not orthonormal", d));
      }

    const ComplexMatrix red = reduction_witness(d);
    rec.check(max_abs_diff(red, witness_matrix(WitnessSpec::identity(d, d - 1))) <= 1e-12,
              detail::at_d("reduction witness != W_{d,d-1}", d));
    rec.check(min_eigenvalue(partial_transpose_b(red, d), opts.jacobi) >= -opts.tol_eig,
              detail::at_d("reduction witness has non-positive partial transpose", d));
  }
  return rec.take();
}

inline SuiteResult symmetry(const Options& opts, std::size_t phases_per_family = 20) {
  detail::Recorder rec("symmetry");
  std::mt19937_64 rng(opts.seed);
  for (std::size_t d = 2; d <= opts.d_max; ++d) {
    std::vector<ComplexMatrix> states{
        fam_state(sampling::random_fam_weights(d, rng)),
        fam_g_state(sampling::random_famg_weights(d, rng)),
    };
    FamUUWeights uu{d, sampling::random_simplex(d, rng), sampling::random_simplex(d, rng)};
    for (auto& x : uu.mu) x *= 0.5;
    for (auto& x : uu.nu) x *= 0.5;
    states.push_back(fam_uu_state(uu));
    for (const auto& rho : states)
      for (std::size_t t = 0; t < phases_per_family; ++t)
        rec.check(check_symmetry(rho, sampling::random_phases(d, rng)) <= 1e-12,
                  detail::at_d("U_x (x) conj(U_x) invariance broken", d));
  }
  return rec.take();
}

inline SuiteResult oracle_equivalence(const Options& opts) {
  detail::Recorder rec("oracle-equivalence");
  std::mt19937_64 rng(opts.seed + 1);
  for (std::size_t d = 3; d <= opts.d_max; ++d) {
    for (std::size_t s = 0; s < opts.oracle_samples; ++s) {
      const FamWeights w = sampling::random_fam_weights(d, rng);
      const bool analytic = ppt_analytic(w).ppt;
      const double numeric = ppt_numeric(fam_state(w), d, opts.jacobi);
      rec.check(analytic == (numeric >= -opts.tol_eig),
                detail::at_d("analytic and numeric PPT tests disagree", d));
      rec.check(std::abs(numeric - detail::pt_min_eig_closed_form(FamGWeights::from_fam(w))) <=
                    1e-10,
                detail::at_d("partial-transpose spectrum differs from closed form", d));
    }
  }
  return rec.take();
}

inline SuiteResult witness_positivity(const Options& opts) {
  detail::Recorder rec("witness-positivity");
  for (std::size_t d = 2; d <= opts.d_max; ++d)
    for (std::size_t k = 1; k < d; ++k) {
      const WitnessSpec spec = WitnessSpec::identity(d, k);
      rec.check(product_positivity_check(spec, opts.product_samples, opts.seed + d * 16 + k) >=
                    -1e-12,
                detail::at_d("witness negative on a product vector", d));
      rec.check(min_eigenvalue(witness_matrix(spec), opts.jacobi) < -1e-12,
                detail::at_d("witness has no negative eigenvalue", d));
    }
  return rec.take();
}

inline SuiteResult decomposition(const Options& opts, std::size_t per_d = 10) {
  detail::Recorder rec("decomposition");
  std::mt19937_64 rng(opts.seed + 2);
  const std::size_t top = std::min(opts.d_max, kMaxDecompositionDim);
  for (std::size_t d = 2; d <= top; ++d)
    for (std::size_t s = 0; s < per_d; ++s) {
      const FamWeights w = d == 2 ? uniform_fam_weights(2) : sampling::random_separable_fam_weights(d, rng);
      const SeparableEnsemble ens = separable_decomposition(w);
      rec.check(std::abs(ens.weight_sum() - 1.0) <= 1e-10,
                detail::at_d("ensemble weights do not sum to 1", d));
      for (const auto& t : ens.terms)
        rec.check(t.weight >= 0.0 && t.a.is_normalized() && t.b.is_normalized(),
                  detail::at_d("ensemble term is not a weighted unit product vector", d));
      rec.check(max_abs_diff(ens.reconstruct(), fam_state(w)) <= 1e-10,
                detail::at_d("ensemble does not reconstruct the state", d));
    }
  return rec.take();
}

inline std::vector<SuiteResult> run_all(const Options& opts) {
  return {projector_algebra(opts), symmetry(opts), oracle_equivalence(opts),
          witness_positivity(opts), decomposition(opts)};
}

}  // namespace qbell::selftest
