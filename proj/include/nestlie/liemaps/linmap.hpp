#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/nestalg/nest.hpp"

namespace nestlie {

/// Linear map Alg N -> B(X) stored by its values on the unit basis.
class LinMap {
 public:
  LinMap() = default;
  LinMap(AlgBasis basis, std::vector<Mat> values) : basis_(std::move(basis)), values_(std::move(values)) {
    if (values_.size() != basis_.size())
      throw DimensionMismatch("LinMap needs " + std::to_string(basis_.size()) + " values, got " +
                              std::to_string(values_.size()));
    const std::size_t n = basis_.matrix_size();
    for (const auto& v : values_)
      if (v.rows() != n || v.cols() != n) throw DimensionMismatch("LinMap value has wrong size");
  }

  static LinMap zero(const AlgBasis& basis) {
    const std::size_t n = basis.matrix_size();
    return LinMap(basis, std::vector<Mat>(basis.size(), Mat(n, n)));
  }

  template <typename F>
  static LinMap from_function(const AlgBasis& basis, F&& f) {
    std::vector<Mat> vs;
    vs.reserve(basis.size());
    for (std::size_t u = 0; u < basis.size(); ++u) vs.push_back(f(basis.unit_matrix(u)));
    return LinMap(basis, std::move(vs));
  }

  /// Inverse of coefficients(): unit-major, then row-major within each value.
  static LinMap from_coefficients(const AlgBasis& basis, std::span<const GaussianRational> c) {
    const std::size_t n = basis.matrix_size();
    if (c.size() != basis.size() * n * n) throw DimensionMismatch("LinMap coefficient length mismatch");
    std::vector<Mat> vs;
    for (std::size_t u = 0; u < basis.size(); ++u) {
      auto first = c.begin() + static_cast<std::ptrdiff_t>(u * n * n);
      vs.emplace_back(n, n, Vec(first, first + static_cast<std::ptrdiff_t>(n * n)));
    }
    return LinMap(basis, std::move(vs));
  }

  const AlgBasis& basis() const { return basis_; }
  const NestSpec& spec() const { return basis_.spec(); }
  const std::vector<Mat>& values() const { return values_; }
  const Mat& value(std::size_t u) const { return values_.at(u); }
  Mat& value(std::size_t u) { return values_.at(u); }

  Vec coefficients() const {
    Vec c;
    c.reserve(coefficient_count());
    for (const auto& v : values_) c.insert(c.end(), v.entries().begin(), v.entries().end());
    return c;
  }

  std::size_t coefficient_count() const {
    return basis_.size() * basis_.matrix_size() * basis_.matrix_size();
  }

  LinMap& operator+=(const LinMap& o) {
    require_same_domain(o);
    for (std::size_t u = 0; u < values_.size(); ++u) values_[u] += o.values_[u];
    return *this;
  }
  LinMap& operator-=(const LinMap& o) {
    require_same_domain(o);
    for (std::size_t u = 0; u < values_.size(); ++u) values_[u] -= o.values_[u];
    return *this;
  }
  LinMap& operator*=(const GaussianRational& s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend LinMap operator+(LinMap a, const LinMap& b) { return a += b; }
  friend LinMap operator-(LinMap a, const LinMap& b) { return a -= b; }
  friend LinMap operator*(const GaussianRational& s, LinMap a) { return a *= s; }

  friend bool operator==(const LinMap& a, const LinMap& b) {
    return a.spec() == b.spec() && a.values_ == b.values_;
  }

 private:
  void require_same_domain(const LinMap& o) const {
    if (spec() != o.spec()) throw DimensionMismatch("LinMaps live on different nests");
  }

  AlgBasis basis_;
  std::vector<Mat> values_;
};

/// Linear extension: L(sum c_u E_u) = sum c_u L(E_u).
inline Mat apply(const LinMap& map, const Mat& a) {
  const Vec c = map.basis().coordinates(a);
  const std::size_t n = map.basis().matrix_size();
  Mat out(n, n);
  for (std::size_t u = 0; u < c.size(); ++u)
    if (!c[u].is_zero()) out += c[u] * map.value(u);
  return out;
}

/// Left-nested commutator tower p_n(x_1, ..., x_n) = [p_{n-1}(x_1..x_{n-1}), x_n].
inline Mat p_n(std::span<const Mat> args) {
  if (args.empty()) throw InvalidArgument("p_n needs at least one argument");
  Mat acc = args[0];
  for (std::size_t k = 1; k < args.size(); ++k) acc = commutator(acc, args[k]);
  return acc;
}

/// Sum over k of p_n(A_1, ..., L(A_k), ..., A_n): the right side of the Lie n rule.
inline Mat lie_rule_rhs(const LinMap& map, std::span<const Mat> args) {
  const std::size_t n = map.basis().matrix_size();
  Mat total(n, n);
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::vector<Mat> slot(args.begin(), args.end());
    slot[k] = apply(map, args[k]);
    total += p_n(slot);
  }
  return total;
}

inline LinMap inner_derivation(const AlgBasis& basis, const Mat& t) {
  return LinMap::from_function(basis, [&](const Mat& e) { return commutator(t, e); });
}

inline LinMap identity_embedding(const AlgBasis& basis) {
  return LinMap::from_function(basis, [](const Mat& e) { return e; });
}

}  // namespace nestlie
