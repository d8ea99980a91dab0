#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"

namespace nestlie {

/// Finite nest {0} = N_0 < N_1 < ... < N_k = C^N given by block sizes
/// (n_1, ..., n_k); N_j is spanned by the first n_1 + ... + n_j coordinates.
class NestSpec {
 public:
  NestSpec() = default;
  explicit NestSpec(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.size() < 2)
      throw SchemaError("nest needs at least two blocks (a trivial nest has no proper element)");
    for (auto b : blocks_)
      if (b == 0) throw SchemaError("nest blocks must be positive");
    offsets_.push_back(0);
    for (auto b : blocks_) offsets_.push_back(offsets_.back() + b);
    for (std::size_t p = 0; p < blocks_.size(); ++p)
      for (std::size_t i = 0; i < blocks_[p]; ++i) block_of_.push_back(p);
  }

  const std::vector<std::size_t>& blocks() const { return blocks_; }
  /// Ambient dimension N.
  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.back(); }
  /// Number of blocks k (the nest has k + 1 elements).
  std::size_t depth() const { return blocks_.size(); }
  std::size_t block_of(std::size_t coord) const { return block_of_.at(coord); }
  /// dim N_j for 0 <= j <= k.
  std::size_t nest_dim(std::size_t j) const { return offsets_.at(j); }
  std::size_t last_block() const { return blocks_.back(); }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < blocks_.size(); ++i) s += (i ? "," : "") + std::to_string(blocks_[i]);
    return s + ")";
  }

  friend bool operator==(const NestSpec& a, const NestSpec& b) { return a.blocks_ == b.blocks_; }
  friend bool operator!=(const NestSpec& a, const NestSpec& b) { return !(a == b); }

 private:
  std::vector<std::size_t> blocks_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> block_of_;
};

struct MatrixUnit {
  std::size_t row;
  std::size_t col;
  friend bool operator==(const MatrixUnit&, const MatrixUnit&) = default;
};

/// Matrix units E_ij spanning Alg N, ordered lexicographically by (i, j).
class AlgBasis {
 public:
  AlgBasis() = default;
  explicit AlgBasis(NestSpec spec) : spec_(std::move(spec)) {
    const std::size_t n = spec_.size();
    index_.assign(n * n, kAbsent);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (spec_.block_of(i) <= spec_.block_of(j)) {
          index_[i * n + j] = units_.size();
          units_.push_back({i, j});
        }
  }

  const NestSpec& spec() const { return spec_; }
  std::size_t size() const { return units_.size(); }
  std::size_t matrix_size() const { return spec_.size(); }
  const std::vector<MatrixUnit>& units() const { return units_; }
  const MatrixUnit& unit(std::size_t u) const { return units_.at(u); }

  std::optional<std::size_t> index_of(std::size_t i, std::size_t j) const {
    const auto k = index_.at(i * spec_.size() + j);
    if (k == kAbsent) return std::nullopt;
    return k;
  }

  Mat unit_matrix(std::size_t u) const {
    return Mat::unit(spec_.size(), units_.at(u).row, units_.at(u).col);
  }

  /// Coordinates of an algebra element in the unit basis.
  Vec coordinates(const Mat& a) const {
    const std::size_t n = spec_.size();
    if (a.rows() != n || a.cols() != n) throw DimensionMismatch("coordinates: wrong matrix size");
    Vec c(units_.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j).is_zero()) continue;
        const auto k = index_[i * n + j];
        if (k == kAbsent)
          throw NotInAlgebra("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") lies below the block diagonal");
        c[k] = a(i, j);
      }
    return c;
  }

  Mat element(std::span<const GaussianRational> coords) const {
    if (coords.size() != units_.size()) throw DimensionMismatch("element: coordinate count mismatch");
    Mat a(spec_.size(), spec_.size());
    for (std::size_t u = 0; u < units_.size(); ++u) a(units_[u].row, units_[u].col) = coords[u];
    return a;
  }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  NestSpec spec_;
  std::vector<MatrixUnit> units_;
  std::vector<std::size_t> index_;
};

inline AlgBasis algebra_basis(const NestSpec& spec) { return AlgBasis(spec); }

/// Coordinate subspace N_j of C^N.
inline Subspace nest_element(const NestSpec& spec, std::size_t j) {
  if (j > spec.depth()) throw InvalidArgument("nest index out of range");
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < spec.nest_dim(j); ++i) vs.push_back(basis_vector(spec.size(), i));
  return Subspace::span(spec.size(), vs);
}

/// Membership in Alg N. Decided twice: by the block pattern and by the
/// invariance T N_j in N_j; the two must agree.
inline bool contains(const NestSpec& spec, const Mat& m) {
  const std::size_t n = spec.size();
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("contains: wrong matrix size");
  bool by_pattern = true;
  for (std::size_t i = 0; i < n && by_pattern; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (spec.block_of(i) > spec.block_of(j) && !m(i, j).is_zero()) {
        by_pattern = false;
        break;
      }
  bool by_invariance = true;
  for (std::size_t j = 1; j < spec.depth() && by_invariance; ++j) {
    const auto nj = nest_element(spec, j);
    for (const auto& v : nj.basis())
      if (!nj.contains(mat_vec<GaussianRational>(m, v))) {
        by_invariance = false;
        break;
      }
  }
  if (by_pattern != by_invariance) throw std::logic_error("contains: block test and invariance test disagree");
  return by_pattern;
}

/// Rank-one operator x (x) f : y -> f(y) x, i.e. the matrix x f^T.
inline Mat rank_one(std::span<const GaussianRational> x, std::span<const GaussianRational> f) {
  Mat m(x.size(), f.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < f.size(); ++j)
      if (!f[j].is_zero()) m(i, j) = x[i] * f[j];
  }
  return m;
}

struct RankOneMembership {
  bool member = false;
  std::optional<std::size_t> witness;  ///< least j with x in N_j and f in (N_j)_-^perp
};

/// x (x) f lies in Alg N iff some N_j contains x while f kills (N_j)_-.
inline RankOneMembership rank_one_in_alg(const NestSpec& spec, std::span<const GaussianRational> x,
                                         std::span<const GaussianRational> f) {
  const std::size_t n = spec.size();
  if (x.size() != n || f.size() != n) throw DimensionMismatch("rank_one_in_alg: length mismatch");
  if (is_zero_vector<GaussianRational>(x) || is_zero_vector<GaussianRational>(f))
    throw InvalidArgument("rank_one_in_alg needs nonzero x and f");
  std::size_t x_top = 0;  // x lies in N_j iff nest_dim(j) >= x_top
  for (std::size_t i = 0; i < n; ++i)
    if (!x[i].is_zero()) x_top = i + 1;
  std::size_t f_low = n;  // f kills N_m iff nest_dim(m) <= f_low
  for (std::size_t i = n; i-- > 0;)
    if (!f[i].is_zero()) f_low = i;
  for (std::size_t j = 1; j <= spec.depth(); ++j)
    if (spec.nest_dim(j) >= x_top && spec.nest_dim(j - 1) <= f_low) return {true, j};
  return {false, std::nullopt};
}

/// Index of N_- for N = N_j: the predecessor in the chain, with {0}_- = {0}.
inline std::size_t n_minus(const NestSpec& spec, std::size_t j) {
  if (j > spec.depth()) throw InvalidArgument("nest index " + std::to_string(j) + " out of range");
  return j == 0 ? 0 : j - 1;
}

/// Index of N_+ (successor), with X_+ = X.
inline std::size_t n_plus(const NestSpec& spec, std::size_t j) {
  if (j > spec.depth()) throw InvalidArgument("nest index " + std::to_string(j) + " out of range");
  return j == spec.depth() ? j : j + 1;
}

/// Annihilator of X_- = N_{k-1}; its dimension is the last block size.
inline Subspace x_minus_perp(const NestSpec& spec) {
  return annihilator(nest_element(spec, spec.depth() - 1));
}

/// Operators commuting with every element of Alg N.
inline Subspace center_relative(const NestSpec& spec) {
  const AlgBasis basis(spec);
  const std::size_t n = spec.size();
  // Unknown T in row-major order; [T, E_ab](r, s) = T(r, a) [s == b] - [r == a] T(b, s).
  Mat m(basis.size() * n * n, n * n);
  std::size_t row = 0;
  for (const auto& u : basis.units())
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s, ++row) {
        if (s == u.col) m(row, r * n + u.row) += 1;
        if (r == u.row) m(row, u.col * n + s) -= 1;
      }
  return kernel(std::move(m));
}

/// Reversal-conjugated transpose J A^T J, an anti-isomorphism Alg N -> Alg N*.
inline Mat iota(const Mat& a) {
  const std::size_t n = a.rows();
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(n - 1 - j, n - 1 - i);
  return out;
}

struct DualNest {
  NestSpec spec;
  /// reindex[u] = index in the original basis of iota(E_u) for dual unit u.
  std::vector<std::size_t> reindex;
};

inline DualNest dual_nest(const NestSpec& spec) {
  std::vector<std::size_t> rev(spec.blocks().rbegin(), spec.blocks().rend());
  DualNest out{NestSpec(rev), {}};
  const AlgBasis original(spec);
  const AlgBasis dual(out.spec);
  const std::size_t n = spec.size();
  for (const auto& u : dual.units()) {
    const auto k = original.index_of(n - 1 - u.col, n - 1 - u.row);
    if (!k) throw std::logic_error("dual_nest: iota does not map units onto units");
    out.reindex.push_back(*k);
  }
  return out;
}

}  // namespace nestlie
