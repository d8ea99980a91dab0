#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla/elimination.hpp"

namespace nestlie {

/// Sparse row with small integer coefficients: (column, value) pairs.
using SparseRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// Kernel of an integer constraint system maintained row by row.
///
/// The current kernel basis is kept exactly over Q. Each basis vector also
/// carries an integer multiple (cleared denominators) so the common case
/// "row annihilates the whole basis" is decided with 128-bit integer dot
/// products. Only rows that cut the kernel touch GMP.
class IncrementalKernel {
 public:
  explicit IncrementalKernel(std::size_t ambient) : ambient_(ambient) {
    basis_.reserve(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      std::vector<Rational> v(ambient);
      v[i] = 1;
      basis_.push_back(std::move(v));
      scaled_.emplace_back();
      refresh_scaled(basis_.size() - 1);
    }
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }

  /// Restricts the kernel to vectors annihilated by row. Returns true when
  /// the kernel shrank.
  bool add_row(const SparseRow& row) {
    if (basis_.empty()) return false;
    std::size_t pivot = basis_.size();
    std::vector<std::size_t> hit;
    for (std::size_t t = 0; t < basis_.size(); ++t)
      if (!annihilates(row, t)) {
        if (pivot == basis_.size()) pivot = t;
        hit.push_back(t);
      }
    if (hit.empty()) return false;

    const Rational wp = exact_dot(row, pivot);
    for (std::size_t t : hit) {
      if (t == pivot) continue;
      const Rational factor = exact_dot(row, t) / wp;
      auto& v = basis_[t];
      const auto& p = basis_[pivot];
      for (std::size_t j = 0; j < ambient_; ++j)
        if (sgn(p[j]) != 0) v[j] -= factor * p[j];
      refresh_scaled(t);
    }
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(pivot));
    scaled_.erase(scaled_.begin() + static_cast<std::ptrdiff_t>(pivot));
    return true;
  }

  void add_rows(const std::vector<SparseRow>& rows) {
    for (const auto& r : rows) add_row(r);
  }

  /// Canonical (reduced echelon) basis of the current kernel.
  BasicSubspace<Rational> subspace() const { return BasicSubspace<Rational>::span(ambient_, basis_); }

 private:
  struct Scaled {
    bool fits = false;
    std::vector<std::int64_t> values;
  };

  static constexpr std::int64_t kLimit = std::int64_t{1} << 52;

  void refresh_scaled(std::size_t t) {
    const auto& v = basis_[t];
    mpz_class scale = 1;
    for (const auto& q : v)
      if (sgn(q) != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    Scaled s;
    s.fits = true;
    s.values.assign(ambient_, 0);
    for (std::size_t j = 0; j < ambient_ && s.fits; ++j) {
      if (sgn(v[j]) == 0) continue;
      mpz_class w = v[j].get_num() * (scale / v[j].get_den());
      if (abs(w) >= kLimit)
        s.fits = false;
      else
        s.values[j] = w.get_si();
    }
    scaled_[t] = std::move(s);
  }

  bool annihilates(const SparseRow& row, std::size_t t) const {
    const auto& s = scaled_[t];
    if (s.fits) {
      __int128 acc = 0;
      for (const auto& [col, c] : row) acc += static_cast<__int128>(c) * s.values[col];
      return acc == 0;
    }
    return sgn(exact_dot(row, t)) == 0;
  }

  Rational exact_dot(const SparseRow& row, std::size_t t) const {
    Rational acc = 0;
    const auto& v = basis_[t];
    for (const auto& [col, c] : row)
      if (sgn(v[col]) != 0) acc += Rational(static_cast<long>(c)) * v[col];
    return acc;
  }

  std::size_t ambient_;
  std::vector<std::vector<Rational>> basis_;
  std::vector<Scaled> scaled_;
};

/// Converts a rational subspace to the Gaussian-rational type (same basis).
inline Subspace to_complex(const BasicSubspace<Rational>& s) {
  std::vector<Vec> vs;
  for (const auto& b : s.basis()) {
    Vec v;
    v.reserve(b.size());
    for (const auto& q : b) v.emplace_back(q);
    vs.push_back(std::move(v));
  }
  return Subspace::span(s.ambient_dim(), vs);
}

}  // namespace nestlie
