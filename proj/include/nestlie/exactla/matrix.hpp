#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla/gaussian_rational.hpp"

namespace nestlie {

/// Dense row-major matrix over an exact field.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("matrix entry count " + std::to_string(data_.size()) + " != " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Matrix unit E_ij: the operator sending e_j to e_i.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& entries() const { return data_; }
  std::vector<T>& entries() { return data_; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!nestlie::is_zero(v)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!nestlie::is_zero(o.data_[k])) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!nestlie::is_zero(o.data_[k])) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_)
      if (!nestlie::is_zero(v)) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch(std::string("shape mismatch in '") + op + "'");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Mat = Matrix<GaussianRational>;
using Vec = std::vector<GaussianRational>;

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.cols()) + " cols vs " +
                            std::to_string(b.rows()) + " rows");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const T& bkj = b(k, j);
        if (!is_zero(bkj)) c(i, j) += aik * bkj;
      }
    }
  return c;
}

/// Lie product [a, b] = ab - ba.
template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw DimensionMismatch("commutator needs square matrices of equal size");
  return mat_mul(a, b) - mat_mul(b, a);
}

template <typename T>
std::vector<T> mat_vec(const Matrix<T>& a, std::span<const T> v) {
  if (a.cols() != v.size()) throw DimensionMismatch("mat_vec: length mismatch");
  std::vector<T> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j)) && !is_zero(v[j])) out[i] += a(i, j) * v[j];
  return out;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <typename T>
T trace(const Matrix<T>& a) {
  if (!a.square()) throw DimensionMismatch("trace of non-square matrix");
  T t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// [a, E_ij] computed without a full product: column j of a E_ij is column i
/// of a, row i of E_ij a is row j of a.
template <typename T>
Matrix<T> commutator_with_unit(const Matrix<T>& a, std::size_t i, std::size_t j) {
  const std::size_t n = a.rows();
  Matrix<T> out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    if (!is_zero(a(r, i))) out(r, j) += a(r, i);
  for (std::size_t s = 0; s < n; ++s)
    if (!is_zero(a(j, s))) out(i, s) -= a(j, s);
  return out;
}

/// Bilinear pairing f(v) = sum f_i v_i (no conjugation).
template <typename T>
T pair(std::span<const T> f, std::span<const T> v) {
  if (f.size() != v.size()) throw DimensionMismatch("pairing: length mismatch");
  T s{};
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!is_zero(f[i]) && !is_zero(v[i])) s += f[i] * v[i];
  return s;
}

template <typename T>
bool is_zero_vector(std::span<const T> v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// Standard basis vector e_i of length n.
inline Vec basis_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

/// True when a is lambda*I for some scalar; the scalar is written to *lambda.
template <typename T>
bool is_scalar_matrix(const Matrix<T>& a, T* lambda = nullptr) {
  if (!a.square()) return false;
  const std::size_t n = a.rows();
  const T d = n == 0 ? T{} : a(0, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j ? a(i, j) != d : !is_zero(a(i, j))) return false;
    }
  if (lambda) *lambda = d;
  return true;
}

}  // namespace nestlie
