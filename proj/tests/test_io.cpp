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

#include <cstdio>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "qbell/io.hpp"
#include "qbell/sampling.hpp"

using namespace qbell;

TEST_CASE("format_real", "[io]") {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  for (int t = 0; t < 1000; ++t) {
    const double x = std::pow(10.0, mag(rng)) * (t % 2 ? -1.0 : 1.0);
    char ref[64];
    std::snprintf(ref, sizeof(ref), "%.17g", x);
    CHECK(io::format_real(x) == ref);
    CHECK(std::stod(io::format_real(x)) == x);
  }
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_real(1.0) == "1");
  CHECK(io::dump(io::json{{"x", std::numeric_limits<double>::quiet_NaN()}}) == R"({"x":null})");
  CHECK(io::dump(io::json{{"b", 2}, {"a", 0.5}}) == R"({"b":2,"a":0.5})");
}

TEST_CASE("matrix round trip", "[io]") {
  std::mt19937_64 rng(51);
  for (std::size_t n : {1, 3, 9}) {
    const ComplexMatrix m = oracle::random_matrix(n, n, rng);
    const auto back = io::matrix_from_json(io::json::parse(io::dump(io::to_json(m))));
    CHECK(back == m);
  }
  CHECK_THROWS(io::matrix_from_json(io::json::parse(R"({"rows":2,"cols":2,"entries":[[1,0]]})")));
}

TEST_CASE("verdict round trip", "[io]") {
  std::mt19937_64 rng(52);
  for (std::size_t d = 2; d <= 5; ++d)
    for (int t = 0; t < 20; ++t) {
      const auto w = sampling::random_famg_weights(d, rng);
      const Verdict v = classify_famg(w);
      const Verdict back = io::verdict_from_json(io::json::parse(io::dump(io::to_json(v))));
      CHECK(back.kind == v.kind);
      CHECK(back.evidence == v.evidence);
    }
  CHECK_THROWS_AS(io::verdict_from_json(io::json::parse(R"({"verdict":"Maybe","evidence":[]})")),
                  std::invalid_argument);
}

TEST_CASE("witness spec validation on read", "[io]") {
  CHECK(io::witness_from_json(io::json::parse(R"({"d":4,"k":2,"pi":[3,1,2]})")).pi ==
        std::vector<std::size_t>{3, 1, 2});
  CHECK_THROWS(io::witness_from_json(io::json::parse(R"({"d":4,"k":2,"pi":[3,3,2]})")));
}

TEST_CASE("ensemble round trip", "[io]") {
  std::mt19937_64 rng(53);
  for (std::size_t d = 3; d <= 4; ++d) {
    const auto w = sampling::random_separable_fam_weights(d, rng);
    const auto ens = separable_decomposition(w);
    const auto back = io::ensemble_from_json(io::json::parse(io::dump(io::to_json(ens))));
    REQUIRE(back.terms.size() == ens.terms.size());
    CHECK(max_abs_diff(back.reconstruct(), ens.reconstruct()) == 0.0);
  }
}
