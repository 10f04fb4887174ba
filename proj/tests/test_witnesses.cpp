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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qbell/bell_states.hpp"
#include "qbell/sampling.hpp"
#include "qbell/witnesses.hpp"

using namespace qbell;
using Catch::Approx;

namespace {

// Tr(rho W) for the generalized family, from Tr(Pi_m Pi_n) = delta/d,
// Tr(Pi_0 P+) = 1/d, Tr(Pi_n P+) = 0 (n >= 1) and Tr(P+ P+) = 1.
double closed_form_value(const FamGWeights& w, const WitnessSpec& s) {
  const double d = static_cast<double>(w.d), k = static_cast<double>(s.k);
  double sel = 0.0;
  for (std::size_t i = 0; i < s.k; ++i) sel += w.lambda(s.pi[i]);
  return ((d - k - 1.0) * w.lambda(0) + sel - k * w.lambda(w.d)) / d;
}

WitnessSpec random_spec(std::size_t d, std::mt19937_64& rng) {
  WitnessSpec s = WitnessSpec::identity(d, 1);
  std::shuffle(s.pi.begin(), s.pi.end(), rng);
  s.k = std::uniform_int_distribution<std::size_t>(1, d - 1)(rng);
  return s;
}

}  // namespace

TEST_CASE("witness_matrix", "[witness]") {
  SECTION("identity permutation is the unpermuted family") {
    for (std::size_t d = 2; d <= 6; ++d)
      for (std::size_t k = 1; k < d; ++k) {
        ComplexMatrix w = pi_state(d, 0) * complex(static_cast<double>(d - k));
        for (std::size_t i = 1; i <= k; ++i) w += pi_state(d, i);
        w -= max_entangled(d);
        const auto built = witness_matrix(WitnessSpec::identity(d, k));
        CHECK(max_abs_diff(built, w) == 0.0);
        CHECK(built.is_hermitian());
        CHECK(std::abs(built.trace() - static_cast<double>(d - 1)) <= 1e-12);
        CHECK(hermitian_eigenvalues(built).front() < -1e-12);
      }
  }
  SECTION("W_{3,2} has positive partial transpose") {
    CHECK(hermitian_eigenvalues(partial_transpose_b(witness_matrix(WitnessSpec::identity(3, 2)), 3)).front() >=
          -1e-10);
  }
  SECTION("W_{3,1} does not") {
    CHECK(hermitian_eigenvalues(partial_transpose_b(witness_matrix(WitnessSpec::identity(3, 1)), 3)).front() <
          -1e-3);
  }
  SECTION("trace is d-1 for permuted specs") {
    std::mt19937_64 rng(21);
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto s = random_spec(d, rng);
      CHECK(std::abs(witness_matrix(s).trace() - static_cast<double>(d - 1)) <= 1e-12);
    }
  }
  SECTION("invalid specs") {
    CHECK_THROWS_AS(witness_matrix(WitnessSpec{3, 0, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(witness_matrix(WitnessSpec{3, 3, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(witness_matrix(WitnessSpec{3, 1, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(witness_matrix(WitnessSpec{3, 1, {0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(witness_matrix(WitnessSpec{3, 1, {1, 2, 3}}), std::invalid_argument);
  }
}

TEST_CASE("reduction_witness", "[witness]") {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto r = reduction_witness(d);
    CHECK(max_abs_diff(r, witness_matrix(WitnessSpec::identity(d, d - 1))) <= 1e-12);
    CHECK(hermitian_eigenvalues(partial_transpose_b(r, d)).front() >= -1e-10);
    CHECK(std::abs(r.trace() - static_cast<double>(d - 1)) <= 1e-12);
  }
  // d = 2: I/2 - P+, partial transpose I/2 - SWAP/2 >= 0.
  const auto r2 = reduction_witness(2);
  CHECK(max_abs_diff(r2, ComplexMatrix::identity(4) * complex(0.5) - max_entangled(2)) <= 1e-15);
  CHECK_THROWS_AS(reduction_witness(1), std::invalid_argument);
}

TEST_CASE("evaluate", "[witness]") {
  SECTION("k = 1 gives (lambda_1 - lambda_d)/d") {
    std::mt19937_64 rng(22);
    for (std::size_t d = 2; d <= 6; ++d)
      for (int t = 0; t < 10; ++t) {
        const auto w = sampling::random_fam_weights(d, rng);
        CHECK(evaluate(fam_state(w), WitnessSpec::identity(d, 1)) ==
              Approx((w.lambda(1) - w.lambda(d)) / static_cast<double>(d)).margin(1e-12));
      }
  }
  SECTION("permuted k = 1, d = 3") {
    const FamWeights w{3, {0.5, 0.3, 0.2}};
    CHECK(evaluate(fam_state(w), WitnessSpec{3, 1, {2, 1}}) == Approx(0.1 / 3.0).margin(1e-12));
  }
  SECTION("permutation covariance") {
    std::mt19937_64 rng(23);
    for (std::size_t d = 3; d <= 6; ++d)
      for (int t = 0; t < 10; ++t) {
        const auto w = sampling::random_fam_weights(d, rng);
        auto s = random_spec(d, rng);
        s.k = 1;
        CHECK(evaluate(fam_state(w), s) ==
              Approx((w.lambda(s.pi[0]) - w.lambda(d)) / static_cast<double>(d)).margin(1e-12));
      }
  }
  SECTION("dense trace agrees with the closed form over the generalized family") {
    std::mt19937_64 rng(24);
    for (std::size_t d = 2; d <= 5; ++d)
      for (int t = 0; t < 10; ++t) {
        const auto w = sampling::random_famg_weights(d, rng);
        const auto s = random_spec(d, rng);
        const auto rho = fam_g_state(w);
        const double dense = oracle::naive_trace(oracle::naive_product(rho, witness_matrix(s))).real();
        CHECK(evaluate(rho, s) == Approx(dense).margin(1e-12));
        CHECK(evaluate(rho, s) == Approx(closed_form_value(w, s)).margin(1e-12));
      }
  }
  SECTION("Pi_0 is never detected") {
    for (std::size_t d = 2; d <= 6; ++d)
      for (std::size_t k = 1; k < d; ++k) {
        const double v = evaluate(pi_state(d, 0), WitnessSpec::identity(d, k));
        const double dense =
            oracle::naive_trace(oracle::naive_product(pi_state(d, 0), witness_matrix(WitnessSpec::identity(d, k))))
                .real();
        CHECK(v == Approx(dense).margin(1e-14));
        CHECK(v == Approx(static_cast<double>(d - k - 1) / static_cast<double>(d)).margin(1e-14));
        CHECK(v >= 0.0);
      }
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(evaluate(ComplexMatrix(4, 4), WitnessSpec::identity(3, 1)), std::invalid_argument);
  }
}

TEST_CASE("product_positivity_check", "[witness]") {
  CHECK(product_positivity_check(WitnessSpec::identity(3, 1), 10000, 1) >= -1e-12);
  CHECK(product_positivity_check(WitnessSpec::identity(4, 2), 10000, 2) >= -1e-12);
  CHECK(product_positivity_check(WitnessSpec{4, 1, {3, 1, 2}}, 5000, 3) >= -1e-12);
  // -P+ is negative on every product vector with <a (x) b|Phi> != 0.
  CHECK(expectation_min_over_products(max_entangled(3) * complex(-1.0), 3, 100, 4) < 0.0);
  // Same seed, same answer.
  CHECK(product_positivity_check(WitnessSpec::identity(3, 1), 500, 9) ==
        product_positivity_check(WitnessSpec::identity(3, 1), 500, 9));
  CHECK_THROWS_AS(product_positivity_check(WitnessSpec::identity(3, 1), 0, 1), std::invalid_argument);
}

TEST_CASE("detect", "[witness]") {
  SECTION("PPT entangled epsilon state") {
    const auto r = detect(fam_state(epsilon_family(3, 4.0)), 3);
    CHECK(r.detected);
    REQUIRE(r.best_spec);
    CHECK(r.best_value < -1e-12);
    CHECK(r.best_value == Approx(evaluate(fam_state(epsilon_family(3, 4.0)), *r.best_spec)).margin(1e-14));
  }
  SECTION("separable Pi_1 is not detected") {
    for (std::size_t d = 2; d <= 6; ++d) CHECK_FALSE(detect(pi_state(d, 1), d).detected);
  }
  SECTION("P+ is detected") {
    for (std::size_t d = 2; d <= 6; ++d) {
      const double dd = static_cast<double>(d);
      CHECK(evaluate(max_entangled(d), WitnessSpec::identity(d, 1)) == Approx(-1.0 / dd).margin(1e-14));
      const auto r = detect(max_entangled(d), d);
      CHECK(r.detected);
      // Tr(P+ W) = -k/d, so the deepest witness is k = d-1.
      CHECK(r.best_value == Approx(-(dd - 1.0) / dd).margin(1e-14));
      CHECK(r.best_spec->k == d - 1);
    }
  }
  SECTION("minimum matches exhaustive dense evaluation") {
    std::mt19937_64 rng(25);
    for (std::size_t d = 3; d <= 4; ++d)
      for (int t = 0; t < 5; ++t) {
        const auto rho = fam_g_state(sampling::random_famg_weights(d, rng));
        double best = 1e9;
        for (std::size_t k = 1; k < d; ++k) {
          auto s = WitnessSpec::identity(d, k);
          do best = std::min(best, evaluate(rho, s));
          while (std::next_permutation(s.pi.begin(), s.pi.end()));
        }
        CHECK(detect(rho, d).best_value == Approx(best).margin(1e-13));
      }
  }
  SECTION("ties resolve to the first (k, pi)") {
    const auto r = detect(ComplexMatrix::identity(16) * complex(1.0 / 16.0), 4);
    CHECK_FALSE(r.detected);
    CHECK(*r.best_spec == WitnessSpec::identity(4, 1));
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(detect(ComplexMatrix(4, 4), 3), std::invalid_argument);
  }
}
