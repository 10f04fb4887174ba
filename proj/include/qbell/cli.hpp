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

/// Command-line front end: build | classify | sweep | witness | decompose | selftest.
///
/// Exit codes: 0 success, 2 invalid arguments, 3 precondition failure,
/// 4 selftest failure. Verdicts are data, so classify exits 0 for every
/// verdict.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbell/bell_states.hpp"
#include "qbell/classify.hpp"
#include "qbell/io.hpp"
#include "qbell/matrix.hpp"
#include "qbell/sampling.hpp"
#include "qbell/selftest.hpp"
#include "qbell/witnesses.hpp"

namespace qbell::cli {

using io::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidArgs = 2,
  kExitPrecondition = 3,
  kExitSelftestFailed = 4,
};

struct CommonOptions {
  std::size_t d = 0;
  std::uint64_t seed = 42;
  std::string format = "json";
  double tol_eig = kEigTol;
  std::string output;
};

// ---------------------------------------------------------------------------
// Families

/// Family name plus whichever parameters it takes.
struct FamilyInput {
  std::string family;
  std::size_t d = 0;
  std::vector<double> lambdas;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<double> lambda_d;
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"fam", "famg", "horodecki", "epsilon", "isotropic"};
  return names;
}

struct ResolvedFamily {
  FamGWeights weights;
  /// True when lambda_0 is structurally absent and the classification is exact.
  bool fam_form = true;
  json params;
};

namespace detail {
inline double require_param(const std::optional<double>& v, const char* flag,
                            const std::string& family) {
  if (!v) throw std::invalid_argument("family '" + family + "' requires " + flag);
  return *v;
}
}  // namespace detail

inline ResolvedFamily resolve(const FamilyInput& in) {
  const std::size_t d = in.d;
  if (in.family == "fam") {
    FamWeights w{d, in.lambdas};
    w.validate();
    return {FamGWeights::from_fam(w), true, json{{"lambdas", in.lambdas}}};
  }
  if (in.family == "famg") {
    FamGWeights w{d, in.lambdas};
    w.validate();
    return {w, false, json{{"lambdas", in.lambdas}}};
  }
  if (in.family == "horodecki") {
    const double alpha = detail::require_param(in.alpha, "--alpha", in.family);
    return {FamGWeights::from_fam(horodecki_family(d, alpha)), true, json{{"alpha", alpha}}};
  }
  if (in.family == "epsilon") {
    const double eps = detail::require_param(in.epsilon, "--epsilon", in.family);
    return {FamGWeights::from_fam(epsilon_family(d, eps)), true, json{{"epsilon", eps}}};
  }
  if (in.family == "isotropic") {
    const double ld = detail::require_param(in.lambda_d, "--lambda-d", in.family);
    return {isotropic_weights(d, ld), false, json{{"lambda_d", ld}}};
  }
  throw std::invalid_argument("unknown family '" + in.family + "'");
}

inline FamilyInput family_input_from_json(const json& j) {
  FamilyInput in;
  in.family = j.at("family").get<std::string>();
  in.d = j.at("d").get<std::size_t>();
  const json& p = j.at("params");
  if (p.contains("lambdas")) in.lambdas = p.at("lambdas").get<std::vector<double>>();
  if (p.contains("alpha")) in.alpha = p.at("alpha").get<double>();
  if (p.contains("epsilon")) in.epsilon = p.at("epsilon").get<double>();
  if (p.contains("lambda_d")) in.lambda_d = p.at("lambda_d").get<double>();
  return in;
}

// ---------------------------------------------------------------------------
// Classification records

struct ClassifyRecord {
  std::string family;
  std::size_t d = 0;
  json params;
  std::vector<double> weights;  ///< lambda_0 .. lambda_d
  Verdict verdict;
  double min_pt_eig = std::numeric_limits<double>::quiet_NaN();
  std::optional<WitnessSpec> best_witness;
  std::optional<double> best_witness_value;
  std::size_t decomposition_terms = 0;
};

inline ClassifyRecord make_record(const FamilyInput& in, const ResolvedFamily& r,
                                  const Verdict& v) {
  ClassifyRecord rec;
  rec.family = in.family;
  rec.d = in.d;
  rec.params = r.params;
  rec.weights = r.weights.lambdas;
  rec.verdict = v;
  if (const auto* e = v.find(EvidenceKind::NumericPptEig)) rec.min_pt_eig = e->value;
  if (const auto* e = v.find(EvidenceKind::WitnessViolation)) {
    rec.best_witness = e->witness;
    rec.best_witness_value = e->value;
  }
  if (const auto* e = v.find(EvidenceKind::Decomposition)) rec.decomposition_terms = e->term_count;
  return rec;
}

inline json to_json(const ClassifyRecord& rec) {
  json j{{"family", rec.family}, {"d", rec.d}, {"params", rec.params}, {"weights", rec.weights}};
  const json v = io::to_json(rec.verdict);
  j["verdict"] = v.at("verdict");
  j["evidence"] = v.at("evidence");
  j["summary"] = json{
      {"min_pt_eig", rec.min_pt_eig},
      {"best_witness", rec.best_witness ? io::to_json(*rec.best_witness) : json(nullptr)},
      {"best_witness_value",
       rec.best_witness_value ? json(*rec.best_witness_value) : json(nullptr)},
      {"decomposition_terms", rec.decomposition_terms},
  };
  return j;
}

inline ClassifyRecord record_from_json(const json& j) {
  ClassifyRecord rec;
  rec.family = j.at("family").get<std::string>();
  rec.d = j.at("d").get<std::size_t>();
  rec.params = j.at("params");
  rec.weights = j.at("weights").get<std::vector<double>>();
  rec.verdict = io::verdict_from_json(json{{"verdict", j.at("verdict")}, {"evidence", j.at("evidence")}});
  const json& s = j.at("summary");
  rec.min_pt_eig = s.at("min_pt_eig").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                : s.at("min_pt_eig").get<double>();
  if (!s.at("best_witness").is_null()) rec.best_witness = io::witness_from_json(s.at("best_witness"));
  if (!s.at("best_witness_value").is_null())
    rec.best_witness_value = s.at("best_witness_value").get<double>();
  rec.decomposition_terms = s.at("decomposition_terms").get<std::size_t>();
  return rec;
}

inline Verdict classify_resolved(const ResolvedFamily& r, const CommonOptions& common) {
  ClassifyOptions opts;
  opts.tol_eig = common.tol_eig;
  if (r.fam_form) {
    FamWeights w{r.weights.d, {r.weights.lambdas.begin() + 1, r.weights.lambdas.end()}};
    return classify_fam(w, opts);
  }
  return classify_famg(r.weights, opts);
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_build(const FamilyInput& in, const CommonOptions& common, std::ostream& out) {
  const ResolvedFamily r = resolve(in);
  const ComplexMatrix rho = fam_g_state(r.weights);
  std::mt19937_64 rng(common.seed);
  double residual = 0.0;
  for (int t = 0; t < 5; ++t)
    residual = std::max(residual, check_symmetry(rho, sampling::random_phases(in.d, rng)));

  json j{{"family", in.family}, {"d", in.d}, {"params", r.params}, {"weights", r.weights.lambdas}};
  j["state"] = io::to_json(rho);
  j["trace"] = rho.trace().real();
  j["min_eigenvalue"] = min_eigenvalue(rho);
  j["symmetry_residual"] = residual;
  out << io::dump(j) << '\n';
  return kExitOk;
}

inline int cmd_classify(const FamilyInput& in, const CommonOptions& common, std::ostream& out) {
  const ResolvedFamily r = resolve(in);
  const ClassifyRecord rec = make_record(in, r, classify_resolved(r, common));
  out << io::dump(to_json(rec)) << '\n';
  return kExitOk;
}

struct SweepRequest {
  std::string family;
  std::size_t d = 0;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  /// Explicit parameter values; replaces the (start, stop, step) grid when non-empty.
  std::vector<double> values;
  /// fam: lambda_1..lambda_{d-1}; famg: lambda_0..lambda_{d-1}. Rescaled to
  /// 1 - lambda_d at each point, where lambda_d is the swept parameter.
  std::vector<double> base_lambdas;
  std::string format = "json";

  void validate() const {
    if (std::find(family_names().begin(), family_names().end(), family) == family_names().end())
      throw std::invalid_argument("sweep: unknown family '" + family + "'");
    if (format != "csv" && format != "json")
      throw std::invalid_argument("sweep: format must be csv or json");
    if (!values.empty()) return;
    if (!(step > 0.0) || !std::isfinite(step))
      throw std::invalid_argument("sweep: step must be positive");
    if (!(start <= stop)) throw std::invalid_argument("sweep: start must not exceed stop");
  }

  std::vector<double> grid() const {
    if (!values.empty()) return values;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> g;
    g.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      g.push_back(std::min(stop, start + static_cast<double>(i) * step));
    return g;
  }

  FamilyInput point(double p) const {
    FamilyInput in{family, d, {}, {}, {}, {}};
    if (family == "horodecki") {
      in.alpha = p;
    } else if (family == "epsilon") {
      in.epsilon = p;
    } else if (family == "isotropic") {
      in.lambda_d = p;
    } else {
      const std::size_t expected = family == "fam" ? d - 1 : d;
      if (base_lambdas.size() != expected)
        throw std::invalid_argument("sweep " + family + ": --lambdas needs " +
                                    std::to_string(expected) + " base weights");
      double sum = 0.0;
      for (double x : base_lambdas) {
        if (!(x >= 0.0)) throw std::invalid_argument("sweep: base weights must be non-negative");
        sum += x;
      }
      if (!(sum > 0.0)) throw std::invalid_argument("sweep: base weights must not all vanish");
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sweep " + family + ": lambda_d must lie in [0, 1]");
      for (double x : base_lambdas) in.lambdas.push_back(x / sum * (1.0 - p));
      in.lambdas.push_back(p);
    }
    return in;
  }
};

struct SweepRow {
  double param = 0.0;
  VerdictKind verdict = VerdictKind::Undecided;
  double min_pt_eig = 0.0;
  double best_witness_value = 0.0;
};

inline std::vector<SweepRow> run_sweep(const SweepRequest& req, const CommonOptions& common) {
  req.validate();
  std::vector<SweepRow> rows;
  for (double p : req.grid()) {
    const ResolvedFamily r = resolve(req.point(p));
    const Verdict v = classify_resolved(r, common);
    const auto* eig = v.find(EvidenceKind::NumericPptEig);
    const DetectionResult det = detect(fam_g_state(r.weights), req.d);
    rows.push_back({p, v.kind, eig ? eig->value : std::numeric_limits<double>::quiet_NaN(),
                    det.best_value});
  }
  return rows;
}

inline int cmd_sweep(const SweepRequest& req, const CommonOptions& common, std::ostream& out) {
  const auto rows = run_sweep(req, common);
  if (req.format == "csv") {
    out << "param,verdict,min_pt_eig,best_witness_value\n";
    for (const auto& row : rows)
      out << io::format_real(row.param) << ',' << to_string(row.verdict) << ','
          << io::format_real(row.min_pt_eig) << ',' << io::format_real(row.best_witness_value)
          << '\n';
    return kExitOk;
  }
  json arr = json::array();
  for (const auto& row : rows)
    arr.push_back(json{{"param", row.param},
                       {"verdict", std::string(to_string(row.verdict))},
                       {"min_pt_eig", row.min_pt_eig},
                       {"best_witness_value", row.best_witness_value}});
  out << io::dump(json{{"family", req.family}, {"d", req.d}, {"rows", std::move(arr)}}) << '\n';
  return kExitOk;
}

inline int cmd_witness(const WitnessSpec& spec, const FamilyInput& target, std::ostream& out) {
  spec.validate();
  if (target.d != spec.d)
    throw std::invalid_argument("witness: target dimension differs from witness dimension");
  const ResolvedFamily r = resolve(target);
  const double value = evaluate(fam_g_state(r.weights), spec);
  json j{{"spec", io::to_json(spec)},
         {"target", json{{"family", target.family}, {"d", target.d}, {"params", r.params}}},
         {"trace_value", value},
         {"detected", value < -kDetectionTol}};
  out << io::dump(j) << '\n';
  return kExitOk;
}

inline int cmd_decompose(const FamilyInput& in, std::ostream& out) {
  const ResolvedFamily r = resolve(in);
  const SeparableEnsemble ens = separable_decomposition(r.weights);
  const double err = max_abs_diff(ens.reconstruct(), fam_g_state(r.weights));
  json j{{"family", in.family}, {"d", in.d}, {"params", r.params}};
  j["weight_sum"] = ens.weight_sum();
  j["term_count"] = ens.terms.size();
  j["reconstruction_error"] = err;
  j["terms"] = io::to_json(ens).at("terms");
  out << io::dump(j) << '\n';
  return kExitOk;
}

inline int cmd_selftest(const selftest::Options& opts, std::ostream& out) {
  if (opts.d_max < 2 || opts.d_max > kMaxDim)
    throw std::invalid_argument("selftest: --d-max must lie in [2, " + std::to_string(kMaxDim) + "]");
  bool all = true;
  for (const auto& suite : selftest::run_all(opts)) {
    out << (suite.passed ? "PASS " : "FAIL ") << suite.name;
    if (!suite.passed) out << ": " << suite.detail;
    out << '\n';
    all = all && suite.passed;
  }
  return all ? kExitOk : kExitSelftestFailed;
}

// ---------------------------------------------------------------------------
// Argument parsing

namespace detail {

inline void add_common(CLI::App* sub, CommonOptions& c, bool needs_d = true) {
  auto* d = sub->add_option("--d", c.d, "Local dimension")->check(CLI::Range(kMinDim, kMaxDim));
  if (needs_d) d->required();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--tol-eig", c.tol_eig, "Partial-transpose eigenvalue threshold")
      ->capture_default_str();
  sub->add_option("--output", c.output, "Write output to this path instead of stdout");
}

inline void add_family_params(CLI::App* sub, FamilyInput& in) {
  sub->add_option("--lambdas", in.lambdas, "Comma-separated weights")->delimiter(',');
  sub->add_option("--alpha", in.alpha, "horodecki parameter");
  sub->add_option("--epsilon", in.epsilon, "epsilon-family parameter");
  sub->add_option("--lambda-d", in.lambda_d, "isotropic weight of P+");
}

}  // namespace detail

/// Parses and runs one command. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement classification for Bell-diagonal qudit states", "qbell"};
  app.require_subcommand(1);

  CommonOptions common;
  FamilyInput family;
  SweepRequest sweep;
  WitnessSpec spec;
  std::string input_path;
  selftest::Options st;
  double st_jacobi_tol = JacobiOptions{}.tol;

  auto* build = app.add_subcommand("build", "Print a density matrix with metadata");
  build->add_option("family", family.family, "Family name")
      ->required()
      ->check(CLI::IsMember(family_names()));
  detail::add_common(build, common);
  detail::add_family_params(build, family);

  auto* classify = app.add_subcommand("classify", "Classify a state and print the evidence");
  classify->add_option("family", family.family, "Family name")->check(CLI::IsMember(family_names()));
  classify->add_option("--input", input_path, "Read the family from a `build` JSON file");
  detail::add_common(classify, common, false);
  detail::add_family_params(classify, family);

  auto* sw = app.add_subcommand("sweep", "Classify over a parameter grid");
  sw->add_option("family", sweep.family, "Family name")
      ->required()
      ->check(CLI::IsMember(family_names()));
  detail::add_common(sw, common);
  sw->add_option("--from", sweep.start, "Grid start");
  sw->add_option("--to", sweep.stop, "Grid stop");
  sw->add_option("--step", sweep.step, "Grid step");
  sw->add_option("--values", sweep.values, "Explicit comma-separated values")->delimiter(',');
  sw->add_option("--lambdas", sweep.base_lambdas, "Base weights for fam/famg sweeps")
      ->delimiter(',');

  auto* wit = app.add_subcommand("witness", "Evaluate Tr(rho W) for one witness");
  detail::add_common(wit, common);
  wit->add_option("--k", spec.k, "Number of permuted projectors")->required();
  wit->add_option("--pi", spec.pi, "Permutation of 1..d-1 (default identity)")->delimiter(',');
  wit->add_option("--target", family.family, "Target family")
      ->required()
      ->check(CLI::IsMember(family_names()));
  detail::add_family_params(wit, family);

  auto* dec = app.add_subcommand("decompose", "Print an explicit separable ensemble");
  dec->add_option("family", family.family, "Family name")
      ->required()
      ->check(CLI::IsMember(family_names()));
  detail::add_common(dec, common);
  detail::add_family_params(dec, family);

  auto* self = app.add_subcommand("selftest", "Run the built-in invariant suites");
  self->add_option("--d-max", st.d_max, "Largest dimension to test")->capture_default_str();
  self->add_option("--seed", st.seed, "Random seed")->capture_default_str();
  self->add_option("--tol-eig", st.tol_eig, "Partial-transpose eigenvalue threshold")
      ->capture_default_str();
  self->add_option("--jacobi-tol", st_jacobi_tol, "Relative convergence tolerance of the eigensolver")
      ->capture_default_str();
  self->add_option("--output", common.output, "Write output to this path instead of stdout");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidArgs;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      err << "error: cannot open " << common.output << " for writing\n";
      return kExitInvalidArgs;
    }
    sink = &file;
  }

  try {
    family.d = common.d;
    if (*build) return cmd_build(family, common, *sink);
    if (*classify) {
      if (!input_path.empty()) {
        std::ifstream in(input_path);
        if (!in) throw std::invalid_argument("cannot read " + input_path);
        family = family_input_from_json(json::parse(in));
      } else if (family.family.empty() || common.d == 0) {
        throw std::invalid_argument("classify needs a family and --d, or --input");
      }
      return cmd_classify(family, common, *sink);
    }
    if (*sw) {
      sweep.d = common.d;
      sweep.format = common.format;
      return cmd_sweep(sweep, common, *sink);
    }
    if (*wit) {
      spec.d = common.d;
      if (spec.pi.empty()) spec.pi = WitnessSpec::identity(spec.d, 1).pi;
      return cmd_witness(spec, family, *sink);
    }
    if (*dec) return cmd_decompose(family, *sink);
    if (*self) {
      st.jacobi.tol = st_jacobi_tol;
      return cmd_selftest(st, *sink);
    }
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidArgs;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitInvalidArgs;
  }
  return kExitInvalidArgs;
}

}  // namespace qbell::cli
