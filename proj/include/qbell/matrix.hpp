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

/// Dense complex matrix kernels.
///
/// Storage is row-major. Bipartite operators on C^d (x) C^d use the flat
/// index i*d + j for the basis vector |i>_A (x) |j>_B throughout the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbell {

using complex = std::complex<double>;

/// Absolute tolerance for Hermiticity checks.
inline constexpr double kHermitianTol = 1e-12;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                                  " does not match " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
    }
  }

  /// Row-wise nested initializer, e.g. {{1, 0}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<complex> entries() noexcept { return entries_; }
  std::span<const complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.entries_) z = std::conj(z);
    return out;
  }

  complex trace() const {
    require_square("trace");
    complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Largest |M_ij - conj(M_ji)|; infinite for non-square input.
  double hermiticity_defect() const {
    if (!is_square()) return INFINITY;
    double defect = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return defect;
  }

  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    require_same_shape(other, "operator+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    require_same_shape(other, "operator-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
  }

  ComplexMatrix& operator*=(complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
  }

  /// this += s * other
  ComplexMatrix& add_scaled(complex s, const ComplexMatrix& other) {
    require_same_shape(other, "add_scaled");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += s * other.entries_[k];
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("matrix product: inner dimensions " + std::to_string(a.cols_) +
                                  " and " + std::to_string(b.rows_) + " differ");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{}) continue;
        const complex* brow = &b.entries_[k * b.cols_];
        complex* orow = &out.entries_[i * out.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
      }
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_square(const char* what) const {
    if (!is_square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  void require_same_shape(const ComplexMatrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> entries_;
};

/// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) m = std::max(m, std::abs(ea[k] - eb[k]));
  return m;
}

/// A state vector in C^dim.
struct Ket {
  std::vector<complex> amplitudes;

  Ket() = default;
  explicit Ket(std::vector<complex> amps) : amplitudes(std::move(amps)) {}

  /// Computational basis vector |index>.
  static Ket basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::invalid_argument("Ket::basis: index out of range");
    Ket k{std::vector<complex>(dim)};
    k.amplitudes[index] = 1.0;
    return k;
  }

  std::size_t dim() const noexcept { return amplitudes.size(); }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
  }

  bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }

  /// |this><this|
  ComplexMatrix projector() const {
    const std::size_t n = dim();
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return p;
  }

  Ket conjugate() const {
    Ket out = *this;
    for (auto& a : out.amplitudes) a = std::conj(a);
    return out;
  }
};

/// Tensor product |a> (x) |b>.
inline Ket kron(const Ket& a, const Ket& b) {
  std::vector<complex> amps;
  amps.reserve(a.dim() * b.dim());
  for (const auto& x : a.amplitudes)
    for (const auto& y : b.amplitudes) amps.push_back(x * y);
  return Ket(std::move(amps));
}

/// Kronecker product: (a (x) b)[i*rb + p][j*cb + q] = a[i][j] * b[p][q].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      if (aij == complex{}) continue;
      for (std::size_t p = 0; p < rb; ++p)
        for (std::size_t q = 0; q < cb; ++q) out(i * rb + p, j * cb + q) = aij * b(p, q);
    }
  return out;
}

/// Transpose on the second tensor factor of a d^2 x d^2 operator:
/// out[(i,l)][(k,j)] = m[(i,j)][(k,l)].
inline ComplexMatrix partial_transpose_b(const ComplexMatrix& m, std::size_t d) {
  if (d == 0 || m.rows() != d * d || m.cols() != d * d) {
    throw std::invalid_argument("partial_transpose_b: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected " + std::to_string(d * d) +
                                "x" + std::to_string(d * d));
  }
  ComplexMatrix out(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) out(i * d + l, k * d + j) = m(i * d + j, k * d + l);
  return out;
}

/// Tr(a b) computed as sum_ij a_ij b_ji, without forming the product.
inline complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != b.cols() || a.cols() != b.rows()) {
    throw std::invalid_argument("trace_product: incompatible shapes " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  complex t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

/// Max-entry norm of ab - ba.
inline double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw std::invalid_argument("commutator_norm: operands must be square of equal size");
  return max_abs_diff(a * b, b * a);
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver (cyclic complex Jacobi)

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius mass is at most tol * ||M||_F.
  double tol = 1e-14;
  int max_sweeps = 100;
};

struct HermitianEigensystem {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< column k is the eigenvector of values[k]
  int sweeps = 0;
};

namespace detail {

inline double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline HermitianEigensystem jacobi_solve(const ComplexMatrix& m, const JacobiOptions& opts,
                                         bool want_vectors) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTol) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix{};
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double threshold = opts.tol * m.frobenius_norm();
  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_mass(a) <= threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;

        // Phase e^{-i phi} on column q makes a_pq real, then a real rotation
        // annihilates it.
        const complex phase = std::conj(apq) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // G = [[c, s], [-s*phase, c*phase]] acting on columns (p, q).
        const complex gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const complex vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * gpp + vkq * gqp;
            v(k, q) = vkp * gpq + vkq * gqq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermitianEigensystem out;
  out.sweeps = sweep;
  out.values.reserve(n);
  for (std::size_t i : order) out.values.push_back(a(i, i).real());
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
  }
  return out;
}

}  // namespace detail

/// Eigenvalues and eigenvectors of a Hermitian matrix, ascending.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m,
                                                  const JacobiOptions& opts = {}) {
  return detail::jacobi_solve(m, opts, true);
}

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                                 const JacobiOptions& opts = {}) {
  return detail::jacobi_solve(m, opts, false).values;
}

inline double min_eigenvalue(const ComplexMatrix& m, const JacobiOptions& opts = {}) {
  const auto values = hermitian_eigenvalues(m, opts);
  return values.empty() ? 0.0 : values.front();
}

}  // namespace qbell
