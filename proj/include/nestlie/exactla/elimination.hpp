#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla/matrix.hpp"

namespace nestlie {

/// Reduces m to reduced row echelon form in place and returns the pivot
/// columns. Pivot choice: first column with a nonzero entry at or below the
/// current row, first such row. Pivot rows are normalized to leading 1.
template <typename T>
std::vector<std::size_t> rref_in_place(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    if (m(r, c) != T(1)) {
      const T inv = T(1) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const T factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!is_zero(m(r, j))) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename T>
std::size_t rank(Matrix<T> m) {
  return rref_in_place(m).size();
}

/// Incrementally maintained echelon basis. add() reports whether the vector
/// was independent of everything added so far.
template <typename T>
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t size() const { return rows_.size(); }

  /// Remainder of v after elimination against the stored rows.
  std::vector<T> reduce(std::vector<T> v) const {
    if (v.size() != ambient_) throw DimensionMismatch("echelon reduce: length mismatch");
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (is_zero(v[p])) continue;
      const T factor = v[p];
      const auto& row = rows_[k];
      for (std::size_t j = p; j < ambient_; ++j)
        if (!is_zero(row[j])) v[j] -= factor * row[j];
    }
    return v;
  }

  bool in_span(std::span<const T> v) const {
    auto rem = reduce(std::vector<T>(v.begin(), v.end()));
    return is_zero_vector<T>(rem);
  }

  bool add(std::span<const T> v) {
    auto rem = reduce(std::vector<T>(v.begin(), v.end()));
    auto lead = std::find_if(rem.begin(), rem.end(), [](const T& x) { return !is_zero(x); });
    if (lead == rem.end()) return false;
    const std::size_t p = static_cast<std::size_t>(lead - rem.begin());
    const T inv = T(1) / rem[p];
    for (std::size_t j = p; j < ambient_; ++j)
      if (!is_zero(rem[j])) rem[j] *= inv;
    // Rows stay ordered by pivot so reduce() sweeps left to right.
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(rem));
    return true;
  }

  const std::vector<std::vector<T>>& rows() const { return rows_; }

 private:
  std::size_t ambient_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Subspace of T^n stored by its unique reduced echelon basis.
template <typename T>
class BasicSubspace {
 public:
  BasicSubspace() = default;
  explicit BasicSubspace(std::size_t ambient) : ambient_(ambient) {}

  static BasicSubspace span(std::size_t ambient, const std::vector<std::vector<T>>& vectors) {
    BasicSubspace s(ambient);
    if (vectors.empty()) return s;
    Matrix<T> m(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient) throw DimensionMismatch("span: vector length mismatch");
      for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
    }
    s.pivots_ = rref_in_place(m);
    for (std::size_t i = 0; i < s.pivots_.size(); ++i) {
      auto r = m.row(i);
      s.basis_.emplace_back(r.begin(), r.end());
    }
    return s;
  }

  static BasicSubspace full(std::size_t ambient) {
    std::vector<std::vector<T>> vs;
    for (std::size_t i = 0; i < ambient; ++i) {
      std::vector<T> v(ambient);
      v[i] = T(1);
      vs.push_back(std::move(v));
    }
    return span(ambient, vs);
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::vector<T>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Coordinates of v in the echelon basis, or nullopt when v is outside.
  std::optional<std::vector<T>> coordinates(std::span<const T> v) const {
    if (v.size() != ambient_) throw DimensionMismatch("coordinates: length mismatch");
    std::vector<T> coords(basis_.size());
    std::vector<T> rem(v.begin(), v.end());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      coords[k] = rem[pivots_[k]];
      if (is_zero(coords[k])) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!is_zero(basis_[k][j])) rem[j] -= coords[k] * basis_[k][j];
    }
    if (!is_zero_vector<T>(rem)) return std::nullopt;
    return coords;
  }

  bool contains(std::span<const T> v) const { return coordinates(v).has_value(); }

  bool is_subspace_of(const BasicSubspace& other) const {
    if (ambient_ != other.ambient_) throw DimensionMismatch("subspace comparison: ambient mismatch");
    for (const auto& b : basis_)
      if (!other.contains(b)) return false;
    return true;
  }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<std::vector<T>> basis_;
  std::vector<std::size_t> pivots_;
};

using Subspace = BasicSubspace<GaussianRational>;

/// Null space {v : m v = 0}, returned in reduced echelon form.
template <typename T>
BasicSubspace<T> kernel(Matrix<T> m) {
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> vs;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols());
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!is_zero(m(r, free))) v[pivots[r]] = -m(r, free);
    vs.push_back(std::move(v));
  }
  return BasicSubspace<T>::span(m.cols(), vs);
}

/// Particular solution of m x = b with free variables set to zero, or nullopt
/// when the system is inconsistent.
template <typename T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, std::span<const std::type_identity_t<T>> b) {
  if (m.rows() != b.size()) throw DimensionMismatch("solve: rhs length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto pivots = rref_in_place(aug);
  std::vector<T> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, m.cols());
  }
  return x;
}

/// Functionals (as row vectors) vanishing on s.
template <typename T>
BasicSubspace<T> annihilator(const BasicSubspace<T>& s) {
  Matrix<T> m(s.dim(), s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.ambient_dim(); ++j) m(i, j) = s.basis()[i][j];
  return kernel(std::move(m));
}

template <typename T>
BasicSubspace<T> intersect(const BasicSubspace<T>& a, const BasicSubspace<T>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersect: ambient mismatch");
  const auto ea = annihilator(a);
  const auto eb = annihilator(b);
  Matrix<T> m(ea.dim() + eb.dim(), a.ambient_dim());
  std::size_t r = 0;
  for (const auto* s : {&ea, &eb})
    for (const auto& v : s->basis()) {
      for (std::size_t j = 0; j < v.size(); ++j) m(r, j) = v[j];
      ++r;
    }
  return kernel(std::move(m));
}

template <typename T>
BasicSubspace<T> subspace_sum(const BasicSubspace<T>& a, const BasicSubspace<T>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("sum: ambient mismatch");
  auto vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return BasicSubspace<T>::span(a.ambient_dim(), vs);
}

}  // namespace nestlie
