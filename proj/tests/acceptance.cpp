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

// Acceptance suite. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbell/bell_states.hpp"
#include "qbell/classify.hpp"
#include "qbell/sampling.hpp"
#include "qbell/selftest.hpp"
#include "qbell/witnesses.hpp"

using namespace qbell;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b);
  return buf;
}

// alpha = 0, 0.05, ..., hi with integer stepping so grid points land on the breakpoints.
std::vector<double> alpha_grid(double hi) {
  std::vector<double> g;
  for (int i = 0; i * 0.05 <= hi + 1e-9; ++i) g.push_back(std::min(hi, i / 20.0));
  return g;
}

Outcome horodecki_d3() {
  Outcome out;
  for (double a : alpha_grid(5.0)) {
    const Verdict v = classify_fam(horodecki_family(3, a), {kEigTol, {}, false});
    VerdictKind expected = VerdictKind::NptEntangled;
    if (a >= 1.0 && a <= 4.0) expected = VerdictKind::PptEntangled;
    if (a >= 2.0 && a <= 3.0) expected = VerdictKind::Separable;
    if (v.kind != expected) {
      out.fail(fmt("alpha=%.2f gave ", a) + std::string(to_string(v.kind)));
      continue;
    }
    if (v.kind == VerdictKind::PptEntangled) {
      const auto* eig = v.find(EvidenceKind::NumericPptEig);
      const auto* wit = v.find(EvidenceKind::WitnessViolation);
      if (!eig || eig->value < -1e-10) out.fail(fmt("alpha=%.2f lacks a PPT eigenvalue certificate", a));
      if (!wit || !(wit->value < -1e-12)) out.fail(fmt("alpha=%.2f lacks a witness certificate", a));
    }
  }
  return out;
}

Outcome horodecki_general() {
  Outcome out;
  for (std::size_t d : {4u, 5u}) {
    const double dm1 = static_cast<double>(d - 1);
    const double ppt_hi = dm1 * dm1, sep_lo = dm1, sep_hi = dm1 * (dm1 - 1.0) + 1.0;
    double first_ppt = -1, last_ppt = -1, first_sep = -1, last_sep = -1;
    for (double a : alpha_grid(ppt_hi + 1.0)) {
      const Verdict v = classify_fam(horodecki_family(d, a), {kEigTol, {}, false});
      if (v.kind != VerdictKind::NptEntangled) {
        if (first_ppt < 0) first_ppt = a;
        last_ppt = a;
      }
      if (v.kind == VerdictKind::Separable) {
        if (first_sep < 0) first_sep = a;
        last_sep = a;
      }
    }
    const double e = 1e-9;
    if (std::abs(first_ppt - 1.0) > e || std::abs(last_ppt - ppt_hi) > e)
      out.fail("d=" + std::to_string(d) + fmt(" PPT region [%.2f, %.2f]", first_ppt, last_ppt));
    if (std::abs(first_sep - sep_lo) > e || std::abs(last_sep - sep_hi) > e)
      out.fail("d=" + std::to_string(d) + fmt(" separable region [%.2f, %.2f]", first_sep, last_sep));
  }
  return out;
}

Outcome epsilon_family_check() {
  Outcome out;
  for (std::size_t d : {3u, 4u, 5u})
    for (double eps : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto w = epsilon_family(d, eps);
      const std::string at = "d=" + std::to_string(d) + fmt(" eps=%.2f", eps);
      if (ppt_numeric(fam_state(w), d) < -1e-10) out.fail(at + " is not PPT");
      const Verdict v = classify_fam(w);
      if ((v.kind == VerdictKind::Separable) != (eps == 1.0)) out.fail(at + " gave " + std::string(to_string(v.kind)));
      if (eps != 1.0) {
        const auto det = detect(fam_state(w), d);
        if (!(det.best_value < -1e-12)) out.fail(at + " has no witness certificate");
      }
    }
  return out;
}

Outcome isotropic_check() {
  Outcome out;
  for (std::size_t d = 2; d <= 6; ++d) {
    const double edge = 1.0 / static_cast<double>(d + 1);
    double last_sep = -1.0, first_npt = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double ld = i / 100.0;
      const VerdictKind k = classify_famg(isotropic_weights(d, ld), {kEigTol, {}, false}).kind;
      if (k == VerdictKind::Separable) {
        last_sep = ld;
        if (first_npt >= 0.0) out.fail("d=" + std::to_string(d) + fmt(" Separable again at %.2f", ld));
      } else if (k == VerdictKind::NptEntangled) {
        if (first_npt < 0.0) first_npt = ld;
      } else {
        out.fail("d=" + std::to_string(d) + fmt(" unexpected verdict at %.2f", ld));
      }
    }
    if (!(last_sep <= edge && first_npt > edge && first_npt - last_sep <= 0.01 + 1e-12))
      out.fail("d=" + std::to_string(d) + fmt(" flip between %.2f and %.2f", last_sep, first_npt));
    const double eig = ppt_numeric(isotropic_state(d, edge), d);
    if (std::abs(eig) > 1e-8) out.fail("d=" + std::to_string(d) + fmt(" boundary eigenvalue %.3g", eig));
  }
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 rng(20260101);
  std::size_t disagreements = 0;
  for (std::size_t d = 3; d <= 6; ++d)
    for (int s = 0; s < 1000; ++s) {
      const auto w = sampling::random_fam_weights(d, rng);
      const bool analytic = ppt_analytic(w).ppt;
      const bool numeric = ppt_numeric(fam_state(w), d) >= -kEigTol;
      if (analytic != numeric) ++disagreements;
    }
  if (disagreements) out.fail(std::to_string(disagreements) + " disagreements");
  return out;
}

Outcome decomposition_soundness() {
  Outcome out;
  std::mt19937_64 rng(20260102);
  for (std::size_t d : {3u, 4u})
    for (int s = 0; s < 200; ++s) {
      const auto w = sampling::random_separable_fam_weights(d, rng);
      const auto ens = separable_decomposition(w);
      const double err = max_abs_diff(ens.reconstruct(), fam_state(w));
      if (err > 1e-10) out.fail("d=" + std::to_string(d) + fmt(" reconstruction error %.3g", err));
      for (const auto& t : ens.terms)
        if (t.weight < 0.0 || t.a.amplitudes.size() != d || t.b.amplitudes.size() != d || !t.a.is_normalized() ||
            !t.b.is_normalized())
          out.fail("d=" + std::to_string(d) + " ensemble factor is not a unit vector");
    }
  return out;
}

Outcome structural() {
  Outcome out;
  selftest::Options opts;
  opts.d_max = 6;
  for (const auto& r : {selftest::projector_algebra(opts), selftest::symmetry(opts, 100)})
    if (!r.passed) out.fail(r.name + ": " + r.detail);
  return out;
}

Outcome witness_sanity() {
  Outcome out;
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t k = 1; k < d; ++k) {
      const auto spec = WitnessSpec::identity(d, k);
      const double m = product_positivity_check(spec, 10000, 1000 + 10 * d + k);
      if (m < -1e-12) out.fail("d=" + std::to_string(d) + " k=" + std::to_string(k) + fmt(" product value %.3g", m));
      if (!(min_eigenvalue(witness_matrix(spec)) < -1e-12))
        out.fail("d=" + std::to_string(d) + " k=" + std::to_string(k) + " has no negative eigenvalue");
    }
  return out;
}

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;  // <= 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "Horodecki d=3 phase diagram", 5.0, horodecki_d3},
      {"AC2", "Horodecki d=4,5 PPT and separable regions", 30.0, horodecki_general},
      {"AC3", "epsilon family d=3..5", 0.0, epsilon_family_check},
      {"AC4", "isotropic threshold d=2..6", 0.0, isotropic_check},
      {"AC5", "analytic vs numeric PPT, 1000 samples per d=3..6", 60.0, oracle_equivalence},
      {"AC6", "separable decomposition, 200 samples per d=3,4", 0.0, decomposition_soundness},
      {"AC7", "projector algebra, Bell basis, reduction witness, symmetry d=2..6", 0.0, structural},
      {"AC8", "witness positivity on 1e4 product vectors, d<=5", 0.0, witness_sanity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s)
      o.fail(fmt("took %.2f s, limit %.0f s", secs, c.time_limit_s));
    std::printf("[%s] %s %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                o.ok ? "" : ": ", o.detail.c_str());
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
