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

/// JSON encoding of matrices, kets, witnesses, verdicts and ensembles.
/// Complex numbers are [re, im]; matrices are {rows, cols, entries} with
/// row-major entries. Reals are written with 17 significant digits.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "qbell/classify.hpp"
#include "qbell/matrix.hpp"
#include "qbell/witnesses.hpp"

namespace qbell::io {

using json = nlohmann::ordered_json;

/// "%.17g" without locale dependence.
inline std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, res.ptr);
}

namespace detail {
inline void write(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(key).dump();
        out += ':';
        write(value, out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        write(value, out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_real(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}
}  // namespace detail

/// Compact serialization with 17-significant-digit reals.
inline std::string dump(const json& j) {
  std::string out;
  detail::write(j, out);
  return out;
}

inline json to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const auto& z : m.entries()) entries.push_back(to_json(z));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  std::vector<complex> entries;
  entries.reserve(rows * cols);
  for (const auto& z : j.at("entries")) entries.push_back(complex_from_json(z));
  return ComplexMatrix(rows, cols, std::move(entries));
}

inline json to_json(const Ket& k) {
  json amps = json::array();
  for (const auto& a : k.amplitudes) amps.push_back(to_json(a));
  return amps;
}

inline Ket ket_from_json(const json& j) {
  std::vector<complex> amps;
  for (const auto& z : j) amps.push_back(complex_from_json(z));
  return Ket(std::move(amps));
}

inline json to_json(const WitnessSpec& s) {
  return json{{"d", s.d}, {"k", s.k}, {"pi", s.pi}};
}

inline WitnessSpec witness_from_json(const json& j) {
  WitnessSpec s{j.at("d").get<std::size_t>(), j.at("k").get<std::size_t>(),
                j.at("pi").get<std::vector<std::size_t>>()};
  s.validate();
  return s;
}

inline json to_json(const Evidence& e) {
  json j{{"kind", std::string(to_string(e.kind))}, {"holds", e.holds}, {"value", e.value}};
  j["violations"] = e.violations;
  j["witness"] = e.witness ? to_json(*e.witness) : json(nullptr);
  j["term_count"] = e.term_count;
  return j;
}

inline Evidence evidence_from_json(const json& j) {
  Evidence e;
  const auto kind = evidence_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown evidence kind");
  e.kind = *kind;
  e.holds = j.at("holds").get<bool>();
  e.value = j.at("value").get<double>();
  e.violations = j.at("violations").get<std::vector<std::vector<std::size_t>>>();
  if (!j.at("witness").is_null()) e.witness = witness_from_json(j.at("witness"));
  e.term_count = j.at("term_count").get<std::size_t>();
  return e;
}

inline json to_json(const Verdict& v) {
  json evidence = json::array();
  for (const auto& e : v.evidence) evidence.push_back(to_json(e));
  return json{{"verdict", std::string(to_string(v.kind))}, {"evidence", std::move(evidence)}};
}

inline Verdict verdict_from_json(const json& j) {
  Verdict v;
  const auto kind = verdict_kind_from_string(j.at("verdict").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown verdict kind");
  v.kind = *kind;
  for (const auto& e : j.at("evidence")) v.evidence.push_back(evidence_from_json(e));
  return v;
}

inline json to_json(const SeparableEnsemble& ens) {
  json terms = json::array();
  for (const auto& t : ens.terms)
    terms.push_back(json{{"w", t.weight}, {"ketA", to_json(t.a)}, {"ketB", to_json(t.b)}});
  return json{{"d", ens.d}, {"terms", std::move(terms)}};
}

inline SeparableEnsemble ensemble_from_json(const json& j) {
  SeparableEnsemble ens{j.at("d").get<std::size_t>(), {}};
  for (const auto& t : j.at("terms"))
    ens.terms.push_back(
        {t.at("w").get<double>(), ket_from_json(t.at("ketA")), ket_from_json(t.at("ketB"))});
  return ens;
}

}  // namespace qbell::io
