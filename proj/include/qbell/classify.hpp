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

/// Separability classification for the Bell-diagonal families.
///
/// For the family sum_{i=1}^{d-1} lambda_i Pi_i + lambda_d P+ the state is
///   PPT        iff lambda_i * lambda_{d-i} >= lambda_d^2 for all i, and
///   separable  iff lambda_i >= lambda_d for all i.
/// Adding a lambda_0 Pi_0 term keeps the PPT rule but leaves a gap between
/// the sufficient condition above and the witness-derived necessary ones;
/// states in that gap are reported as Undecided.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qbell/bell_states.hpp"
#include "qbell/matrix.hpp"
#include "qbell/witnesses.hpp"

namespace qbell {

/// Slack on exact comparisons between weights.
inline constexpr double kAnalyticSlack = 1e-15;
/// Default threshold on partial-transpose eigenvalues.
inline constexpr double kEigTol = 1e-10;
/// The phase ensemble has d^d terms; beyond this it is too large to emit.
inline constexpr std::size_t kMaxDecompositionDim = 6;

/// A call whose mathematical precondition does not hold for its input.
class precondition_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Analytic conditions

struct PptCheck {
  bool ppt = true;
  /// Unordered pairs (i, d-i), i <= d-i, with lambda_i lambda_{d-i} < lambda_d^2.
  std::vector<std::pair<std::size_t, std::size_t>> violated;
};

namespace detail {
// lambdas[i] holds lambda_i for i in 0..d (lambda_0 ignored).
inline PptCheck ppt_pairs(std::size_t d, std::span<const double> lambdas) {
  PptCheck out;
  const double ld2 = lambdas[d] * lambdas[d];
  for (std::size_t i = 1; i <= d - i; ++i) {
    const std::size_t partner = d - i;
    if (lambdas[i] * lambdas[partner] < ld2 - kAnalyticSlack) {
      out.ppt = false;
      out.violated.emplace_back(i, partner);
    }
  }
  return out;
}

inline std::vector<double> with_zero_lambda0(const FamWeights& w) {
  return FamGWeights::from_fam(w).lambdas;
}
}  // namespace detail

inline PptCheck ppt_analytic(const FamWeights& w) {
  w.validate();
  return detail::ppt_pairs(w.d, detail::with_zero_lambda0(w));
}

/// The PPT rule ignores lambda_0.
inline PptCheck ppt_analytic(const FamGWeights& w) {
  w.validate();
  return detail::ppt_pairs(w.d, w.lambdas);
}

struct SepCheck {
  bool separable = true;
  std::vector<std::size_t> violated;  ///< indices i with lambda_i < lambda_d
};

namespace detail {
inline SepCheck lambda_dominates(std::size_t d, std::span<const double> lambdas) {
  SepCheck out;
  for (std::size_t i = 1; i < d; ++i) {
    if (lambdas[i] < lambdas[d] - kAnalyticSlack) {
      out.separable = false;
      out.violated.push_back(i);
    }
  }
  return out;
}
}  // namespace detail

inline SepCheck separable_analytic(const FamWeights& w) {
  w.validate();
  return detail::lambda_dominates(w.d, detail::with_zero_lambda0(w));
}

/// lambda_i >= lambda_d for i = 1..d-1; sufficient for the generalized family.
inline bool sufficient_separability_famg(const FamGWeights& w) {
  w.validate();
  return detail::lambda_dominates(w.d, w.lambdas).separable;
}

struct NecessaryViolation {
  std::size_t k = 0;
  std::vector<std::size_t> selected;  ///< the k indices whose mean falls short
  double mean = 0.0;
  double bound = 0.0;
};

struct NecessaryCheck {
  bool holds = true;
  std::vector<NecessaryViolation> violated;
};

/// For every k and every k-subset of {1..d-1}:
///   mean(lambda over subset) >= lambda_d - (d-k-1) lambda_0.
/// Only the k smallest weights need checking for each k.
inline NecessaryCheck necessary_conditions_famg(const FamGWeights& w) {
  w.validate();
  const std::size_t d = w.d;
  std::vector<std::size_t> order(d - 1);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w.lambda(a) < w.lambda(b); });

  NecessaryCheck out;
  double running = 0.0;
  for (std::size_t k = 1; k < d; ++k) {
    running += w.lambda(order[k - 1]);
    const double mean = running / static_cast<double>(k);
    const double bound = w.lambda(d) - static_cast<double>(d - k - 1) * w.lambda(0);
    if (mean < bound - kAnalyticSlack) {
      out.holds = false;
      out.violated.push_back({k, {order.begin(), order.begin() + static_cast<long>(k)}, mean,
                              bound});
    }
  }
  return out;
}

/// Minimal eigenvalue of the partial transpose.
inline double ppt_numeric(const ComplexMatrix& rho, std::size_t d,
                          const JacobiOptions& jacobi = {}) {
  return min_eigenvalue(partial_transpose_b(rho, d), jacobi);
}

// ---------------------------------------------------------------------------
// Separable decompositions

struct SeparableEnsemble {
  struct Term {
    double weight = 0.0;
    Ket a;
    Ket b;
  };
  std::size_t d = 0;
  std::vector<Term> terms;

  double weight_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.weight;
    return s;
  }

  /// sum_t w_t |a_t><a_t| (x) |b_t><b_t|
  ComplexMatrix reconstruct() const {
    const std::size_t n = d * d;
    ComplexMatrix rho(n, n);
    for (const auto& t : terms) {
      const Ket ab = kron(t.a, t.b);
      for (std::size_t i = 0; i < n; ++i) {
        const complex left = t.weight * ab.amplitudes[i];
        if (left == complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) rho(i, j) += left * std::conj(ab.amplitudes[j]);
      }
    }
    return rho;
  }
};

/// Vectors |e_j> = d^{-1/2} sum_k w^{j_k} |k> for every j in Z_m^d, where
/// m = d (d >= 3) or m = 4 (d = 2). The uniform mixture of
/// |e_j><e_j| (x) |conj e_j><conj e_j| equals (1/d)(sum_{n>=1} Pi_n + P+).
inline std::vector<Ket> phase_ensemble_kets(std::size_t d) {
  require_dim(d, "phase_ensemble_kets");
  const std::size_t base = d == 2 ? 4 : d;
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= base;

  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Ket> kets;
  kets.reserve(count);
  std::vector<std::size_t> digits(d, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<complex> amps(d);
    for (std::size_t k = 0; k < d; ++k)
      amps[k] = amp * root_of_unity(base, static_cast<long long>(digits[k]));
    kets.emplace_back(std::move(amps));
    for (std::size_t k = d; k-- > 0;) {
      if (++digits[k] < base) break;
      digits[k] = 0;
    }
  }
  return kets;
}

/// rho = d lambda_d rho~ + lambda_0 Pi_0 + sum_{i>=1} (lambda_i - lambda_d) Pi_i,
/// with rho~ expanded over the phase ensemble and each Pi_n over product
/// basis vectors.
inline SeparableEnsemble separable_decomposition(const FamGWeights& w) {
  w.validate();
  const std::size_t d = w.d;
  const SepCheck check = detail::lambda_dominates(d, w.lambdas);
  if (!check.separable) {
    const std::size_t i = check.violated.front();
    throw precondition_error("separable_decomposition: lambda_" + std::to_string(i) +
                             " < lambda_" + std::to_string(d) + " (violated index " +
                             std::to_string(i) + ")");
  }
  if (d > kMaxDecompositionDim)
    throw precondition_error("separable_decomposition: d=" + std::to_string(d) +
                             " exceeds the supported maximum " +
                             std::to_string(kMaxDecompositionDim));

  SeparableEnsemble out{d, {}};
  const double dd = static_cast<double>(d);

  for (std::size_t n = 0; n < d; ++n) {
    const double excess = n == 0 ? w.lambda(0) : w.lambda(n) - w.lambda(d);
    if (excess <= 0.0) continue;
    for (std::size_t i = 0; i < d; ++i)
      out.terms.push_back({excess / dd, Ket::basis(d, i), Ket::basis(d, (i + n) % d)});
  }

  if (w.lambda(d) > 0.0) {
    auto kets = phase_ensemble_kets(d);
    const double weight = dd * w.lambda(d) / static_cast<double>(kets.size());
    for (auto& e : kets) {
      Ket conj_e = e.conjugate();
      out.terms.push_back({weight, std::move(e), std::move(conj_e)});
    }
  }
  return out;
}

inline SeparableEnsemble separable_decomposition(const FamWeights& w) {
  w.validate();
  return separable_decomposition(FamGWeights::from_fam(w));
}

// ---------------------------------------------------------------------------
// Verdicts

enum class VerdictKind { Separable, PptEntangled, NptEntangled, Undecided };

enum class EvidenceKind {
  AnalyticPpt,
  NumericPptEig,
  AnalyticSep,
  WitnessViolation,
  Decomposition,
  NecessaryCondFail,
};

inline std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Separable: return "Separable";
    case VerdictKind::PptEntangled: return "PptEntangled";
    case VerdictKind::NptEntangled: return "NptEntangled";
    case VerdictKind::Undecided: return "Undecided";
  }
  return "?";
}

inline std::string_view to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::AnalyticPpt: return "AnalyticPpt";
    case EvidenceKind::NumericPptEig: return "NumericPptEig";
    case EvidenceKind::AnalyticSep: return "AnalyticSep";
    case EvidenceKind::WitnessViolation: return "WitnessViolation";
    case EvidenceKind::Decomposition: return "Decomposition";
    case EvidenceKind::NecessaryCondFail: return "NecessaryCondFail";
  }
  return "?";
}

inline std::optional<VerdictKind> verdict_kind_from_string(std::string_view s) {
  for (auto k : {VerdictKind::Separable, VerdictKind::PptEntangled, VerdictKind::NptEntangled,
                 VerdictKind::Undecided})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

inline std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s) {
  for (auto k : {EvidenceKind::AnalyticPpt, EvidenceKind::NumericPptEig, EvidenceKind::AnalyticSep,
                 EvidenceKind::WitnessViolation, EvidenceKind::Decomposition,
                 EvidenceKind::NecessaryCondFail})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// One checkable fact behind a verdict. Field use by kind:
///   AnalyticPpt        holds, violations = {{i, d-i}, ...}
///   NumericPptEig      holds, value = min eigenvalue of the partial transpose
///   AnalyticSep        holds, violations = {{i}, ...}
///   WitnessViolation   holds (= detected), value = Tr(rho W), witness
///   Decomposition      value = reconstruction error, term_count
///   NecessaryCondFail  violations = {{k, selected indices...}, ...}
struct Evidence {
  EvidenceKind kind = EvidenceKind::AnalyticPpt;
  bool holds = false;
  double value = 0.0;
  std::vector<std::vector<std::size_t>> violations;
  std::optional<WitnessSpec> witness;
  std::size_t term_count = 0;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Undecided;
  std::vector<Evidence> evidence;

  const Evidence* find(EvidenceKind k) const {
    for (const auto& e : evidence)
      if (e.kind == k) return &e;
    return nullptr;
  }
};

struct ClassifyOptions {
  double tol_eig = kEigTol;
  JacobiOptions jacobi{};
  /// Attach an explicit ensemble to Separable verdicts when d allows it.
  bool with_decomposition = true;
};

namespace detail {

inline Evidence ppt_evidence(const PptCheck& c) {
  Evidence e{EvidenceKind::AnalyticPpt, c.ppt, 0.0, {}, std::nullopt, 0};
  for (auto [i, j] : c.violated) e.violations.push_back({i, j});
  return e;
}

inline Evidence sep_evidence(const SepCheck& c) {
  Evidence e{EvidenceKind::AnalyticSep, c.separable, 0.0, {}, std::nullopt, 0};
  for (auto i : c.violated) e.violations.push_back({i});
  return e;
}

inline Evidence witness_evidence(const DetectionResult& r) {
  return {EvidenceKind::WitnessViolation, r.detected, r.best_value, {}, r.best_spec, 0};
}

inline Evidence decomposition_evidence(const FamGWeights& w, const ComplexMatrix& rho) {
  const SeparableEnsemble ens = separable_decomposition(w);
  const double err = max_abs_diff(ens.reconstruct(), rho);
  return {EvidenceKind::Decomposition, err <= 1e-10, err, {}, std::nullopt, ens.terms.size()};
}

inline Verdict classify_impl(const FamGWeights& w, const ClassifyOptions& opts) {
  const std::size_t d = w.d;
  const ComplexMatrix rho = fam_g_state(w);
  Verdict v;

  const PptCheck ppt = detail::ppt_pairs(d, w.lambdas);
  v.evidence.push_back(ppt_evidence(ppt));
  const double min_eig = ppt_numeric(rho, d, opts.jacobi);
  v.evidence.push_back({EvidenceKind::NumericPptEig, min_eig >= -opts.tol_eig, min_eig, {},
                        std::nullopt, 0});
  if (!ppt.ppt) {
    v.kind = VerdictKind::NptEntangled;
    return v;
  }

  const SepCheck sep = detail::lambda_dominates(d, w.lambdas);
  v.evidence.push_back(sep_evidence(sep));
  if (sep.separable) {
    v.kind = VerdictKind::Separable;
    if (opts.with_decomposition && d <= kMaxDecompositionDim)
      v.evidence.push_back(decomposition_evidence(w, rho));
    return v;
  }

  const DetectionResult det = detect(rho, d);
  v.evidence.push_back(witness_evidence(det));

  if (w.lambda(0) == 0.0) {
    // Without the Pi_0 term the separability rule is exact; a failing index i
    // is detected by the k = 1 witness with pi(1) = i.
    v.kind = VerdictKind::PptEntangled;
    return v;
  }

  const NecessaryCheck nec = necessary_conditions_famg(w);
  if (!nec.holds) {
    Evidence e{EvidenceKind::NecessaryCondFail, false, 0.0, {}, std::nullopt, 0};
    for (const auto& viol : nec.violated) {
      std::vector<std::size_t> row{viol.k};
      row.insert(row.end(), viol.selected.begin(), viol.selected.end());
      e.violations.push_back(std::move(row));
    }
    v.evidence.push_back(std::move(e));
  }
  v.kind = (!nec.holds || det.detected) ? VerdictKind::PptEntangled : VerdictKind::Undecided;
  return v;
}

}  // namespace detail

/// Complete classification of sum_{i<d} lambda_i Pi_i + lambda_d P+; never Undecided.
inline Verdict classify_fam(const FamWeights& w, const ClassifyOptions& opts = {}) {
  w.validate();
  return detail::classify_impl(FamGWeights::from_fam(w), opts);
}

/// Classification of the generalized family including lambda_0 Pi_0.
inline Verdict classify_famg(const FamGWeights& w, const ClassifyOptions& opts = {}) {
  w.validate();
  return detail::classify_impl(w, opts);
}

/// Re-derives an evidence item from the weights through a route independent
/// of the one that produced it. Returns false if the claim does not hold up.
inline bool verify_evidence(const Evidence& e, const FamGWeights& w,
                            const ClassifyOptions& opts = {}) {
  const std::size_t d = w.d;
  switch (e.kind) {
    case EvidenceKind::AnalyticPpt: {
      // Violations must be genuine and complete.
      std::size_t failures = 0;
      for (std::size_t i = 1; i < d; ++i)
        if (i <= d - i && w.lambda(i) * w.lambda(d - i) < w.lambda(d) * w.lambda(d) - kAnalyticSlack)
          ++failures;
      for (const auto& pair : e.violations) {
        if (pair.size() != 2 || pair[0] + pair[1] != d) return false;
        if (!(w.lambda(pair[0]) * w.lambda(pair[1]) < w.lambda(d) * w.lambda(d))) return false;
      }
      return failures == e.violations.size() && e.holds == (failures == 0);
    }
    case EvidenceKind::NumericPptEig: {
      const auto pt = partial_transpose_b(fam_g_state(w), d);
      const auto values = hermitian_eigenvalues(pt, opts.jacobi);
      return std::abs(values.front() - e.value) <= 1e-10 && e.holds == (e.value >= -opts.tol_eig);
    }
    case EvidenceKind::AnalyticSep: {
      std::size_t failures = 0;
      for (std::size_t i = 1; i < d; ++i)
        if (w.lambda(i) < w.lambda(d) - kAnalyticSlack) ++failures;
      for (const auto& idx : e.violations)
        if (idx.size() != 1 || !(w.lambda(idx[0]) < w.lambda(d))) return false;
      return failures == e.violations.size() && e.holds == (failures == 0);
    }
    case EvidenceKind::WitnessViolation: {
      if (!e.witness) return false;
      const double value = evaluate(fam_g_state(w), *e.witness);
      return std::abs(value - e.value) <= 1e-12 && e.holds == (value < -kDetectionTol);
    }
    case EvidenceKind::Decomposition: {
      const SeparableEnsemble ens = separable_decomposition(w);
      if (ens.terms.size() != e.term_count) return false;
      for (const auto& t : ens.terms)
        if (t.weight < 0.0 || !t.a.is_normalized() || !t.b.is_normalized()) return false;
      return std::abs(ens.weight_sum() - 1.0) <= 1e-10 &&
             max_abs_diff(ens.reconstruct(), fam_g_state(w)) <= 1e-10;
    }
    case EvidenceKind::NecessaryCondFail: {
      for (const auto& row : e.violations) {
        if (row.size() < 2 || row[0] + 1 != row.size()) return false;
        const std::size_t k = row[0];
        double sum = 0.0;
        for (std::size_t j = 1; j < row.size(); ++j) sum += w.lambda(row[j]);
        const double bound = w.lambda(d) - static_cast<double>(d - k - 1) * w.lambda(0);
        if (!(sum / static_cast<double>(k) < bound)) return false;
      }
      return !e.violations.empty();
    }
  }
  return false;
}

}  // namespace qbell
