#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/liemaps/linmap.hpp"
#include "nestlie/nestalg/nest.hpp"

namespace nestlie {

/// Limits on the tuple enumeration behind constraint assembly.
struct Budget {
  std::size_t max_dim = 15;
  std::size_t max_order = 5;
  std::uint64_t max_tuples = 1'000'000;
};

/// d^n, saturating at UINT64_MAX.
inline std::uint64_t tuple_count(std::size_t d, std::size_t n) {
  std::uint64_t t = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (d != 0 && t > UINT64_MAX / d) return UINT64_MAX;
    t *= d;
  }
  return t;
}

inline void require_budget(const AlgBasis& basis, std::size_t n, const Budget& budget, const char* what) {
  const std::uint64_t required = tuple_count(basis.size(), n);
  if (basis.size() > budget.max_dim || n > budget.max_order || required > budget.max_tuples)
    throw BudgetExceeded(required, budget.max_tuples,
                         std::string(what) + " on " + basis.spec().str() + " with d=" +
                             std::to_string(basis.size()) + ", n=" + std::to_string(n));
}

enum class MapKind { Derivation, LieN, CentralVanishing };

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::Derivation: return "DERIVATION";
    case MapKind::LieN: return "LIE_N";
    case MapKind::CentralVanishing: return "CENTRAL_VANISHING";
  }
  return "?";
}

/// Subspace of linear maps Alg N -> B(X) in coefficient coordinates
/// (unit-major, then row-major). The stored basis is the reduced echelon one.
class MapSpace {
 public:
  MapSpace() = default;
  MapSpace(AlgBasis basis, MapKind kind, Subspace coeffs)
      : basis_(std::move(basis)), kind_(kind), coeffs_(std::move(coeffs)) {
    const std::size_t n = basis_.matrix_size();
    if (coeffs_.ambient_dim() != basis_.size() * n * n)
      throw DimensionMismatch("MapSpace: coefficient space has wrong dimension");
  }

  static MapSpace from_maps(const AlgBasis& basis, MapKind kind, const std::vector<LinMap>& maps) {
    std::vector<Vec> vs;
    for (const auto& m : maps) vs.push_back(m.coefficients());
    const std::size_t n = basis.matrix_size();
    return MapSpace(basis, kind, Subspace::span(basis.size() * n * n, vs));
  }

  const AlgBasis& basis() const { return basis_; }
  const NestSpec& spec() const { return basis_.spec(); }
  MapKind kind() const { return kind_; }
  std::size_t dim() const { return coeffs_.dim(); }
  const Subspace& coefficients() const { return coeffs_; }

  std::vector<LinMap> basis_maps() const {
    std::vector<LinMap> out;
    for (const auto& v : coeffs_.basis()) out.push_back(LinMap::from_coefficients(basis_, v));
    return out;
  }

  LinMap combination(std::span<const GaussianRational> c) const {
    if (c.size() != dim()) throw DimensionMismatch("combination: coefficient count mismatch");
    LinMap out = LinMap::zero(basis_);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) out += c[i] * LinMap::from_coefficients(basis_, coeffs_.basis()[i]);
    return out;
  }

  bool contains(const LinMap& m) const { return coeffs_.contains(m.coefficients()); }
  bool is_subspace_of(const MapSpace& o) const { return coeffs_.is_subspace_of(o.coeffs_); }

 private:
  AlgBasis basis_;
  MapKind kind_ = MapKind::LieN;
  Subspace coeffs_;
};

namespace detail {

/// Integer N x N matrix used while enumerating towers of matrix units.
using IntMat = std::vector<std::int64_t>;

inline bool all_zero(const IntMat& m) {
  for (auto v : m)
    if (v != 0) return false;
  return true;
}

/// out = [y, E_ij] for an N x N integer matrix y.
inline void commute_unit(const std::int64_t* y, std::size_t n, std::size_t i, std::size_t j, std::int64_t* out) {
  std::fill(out, out + n * n, 0);
  for (std::size_t r = 0; r < n; ++r) out[r * n + j] += y[r * n + i];
  for (std::size_t s = 0; s < n; ++s) out[i * n + s] -= y[j * n + s];
}

/// Depth-first enumeration of unit tuples (u_1 < u_2, rest free) carrying the
/// tower p_k of the prefix and, for every slot, the linear operator
/// X -> p_k(..., X in that slot, ...) as an N^2 x N^2 integer matrix
/// (column c is the image of the c-th matrix unit in row-major order).
/// Emits the Lie n rule constraint rows on L's coefficients.
class LieConstraintAssembler {
 public:
  LieConstraintAssembler(const AlgBasis& basis, std::size_t order, IncrementalKernel& kernel)
      : basis_(basis), order_(order), n_(basis.matrix_size()), sq_(n_ * n_), kernel_(kernel) {
    towers_.assign(order_ + 1, IntMat(sq_));
    ops_.assign(order_ + 1, IntMat(order_ * sq_ * sq_));
    tuple_.assign(order_ + 1, 0);
    acc_.assign(basis_.size() * sq_, 0);
    seen_.assign(basis_.size() * sq_, false);
  }

  void run() {
    for (std::size_t u = 0; u < basis_.size(); ++u) {
      tuple_[1] = u;
      auto& p = towers_[1];
      std::fill(p.begin(), p.end(), 0);
      p[basis_.unit(u).row * n_ + basis_.unit(u).col] = 1;
      auto& op = ops_[1];
      std::fill(op.begin(), op.end(), 0);
      for (std::size_t c = 0; c < sq_; ++c) op[c * sq_ + c] = 1;
      descend(1);
    }
    flush();
  }

  std::uint64_t rows_emitted() const { return rows_emitted_; }

 private:
  static constexpr std::size_t kBatch = 1024;

  std::int64_t* op_column(std::size_t level, std::size_t slot, std::size_t c) {
    return ops_[level].data() + (slot * sq_ + c) * sq_;
  }

  void descend(std::size_t level) {
    if (level == order_) {
      emit(level);
      return;
    }
    const std::size_t first = level == 1 ? tuple_[1] + 1 : 0;
    for (std::size_t u = first; u < basis_.size(); ++u) {
      if (extend(level, u)) descend(level + 1);
    }
  }

  /// Builds level+1 from level by appending unit u. Returns false when every
  /// tower and slot operator vanishes, so no extension can yield a nonzero row.
  bool extend(std::size_t level, std::size_t u) {
    const auto [i, j] = basis_.unit(u);
    const std::size_t next = level + 1;
    tuple_[next] = u;
    commute_unit(towers_[level].data(), n_, i, j, towers_[next].data());
    bool alive = !all_zero(towers_[next]);
    for (std::size_t slot = 0; slot < level; ++slot)
      for (std::size_t c = 0; c < sq_; ++c) {
        std::int64_t* dst = op_column(next, slot, c);
        commute_unit(op_column(level, slot, c), n_, i, j, dst);
        if (!alive)
          for (std::size_t k = 0; k < sq_; ++k)
            if (dst[k] != 0) {
              alive = true;
              break;
            }
      }
    // New slot: X -> [p_level(prefix), X].
    for (std::size_t c = 0; c < sq_; ++c) {
      std::int64_t* dst = op_column(next, level, c);
      commute_unit(towers_[level].data(), n_, c / n_, c % n_, dst);
      if (!alive)
        for (std::size_t k = 0; k < sq_; ++k)
          if (dst[k] != 0) {
            alive = true;
            break;
          }
    }
    return alive;
  }

  void emit(std::size_t level) {
    const auto& tower = towers_[level];
    for (std::size_t o = 0; o < sq_; ++o) {
      touched_.clear();
      // L(p_n(...)) contributes L(E_v)[o] weighted by the tower's coordinate on E_v.
      for (std::size_t c = 0; c < sq_; ++c) {
        if (tower[c] == 0) continue;
        const auto v = basis_.index_of(c / n_, c % n_);
        if (!v) throw std::logic_error("tower left the algebra");
        bump(*v * sq_ + o, tower[c]);
      }
      for (std::size_t slot = 0; slot < level; ++slot) {
        const std::size_t u = tuple_[slot + 1];
        for (std::size_t c = 0; c < sq_; ++c) {
          const std::int64_t val = ops_[level][(slot * sq_ + c) * sq_ + o];
          if (val != 0) bump(u * sq_ + c, -val);
        }
      }
      SparseRow row;
      for (auto col : touched_) {
        if (acc_[col] != 0) row.emplace_back(static_cast<std::uint32_t>(col), acc_[col]);
        acc_[col] = 0;
        seen_[col] = false;
      }
      if (row.empty()) continue;
      std::sort(row.begin(), row.end());
      batch_.push_back(std::move(row));
      ++rows_emitted_;
      if (batch_.size() >= kBatch) flush();
    }
  }

  void bump(std::size_t col, std::int64_t v) {
    if (!seen_[col]) {
      seen_[col] = true;
      touched_.push_back(col);
    }
    acc_[col] += v;
  }

  void flush() {
    kernel_.add_rows(batch_);
    batch_.clear();
  }

  const AlgBasis& basis_;
  std::size_t order_;
  std::size_t n_;
  std::size_t sq_;
  IncrementalKernel& kernel_;
  std::vector<IntMat> towers_;
  std::vector<IntMat> ops_;
  std::vector<std::size_t> tuple_;
  std::vector<std::int64_t> acc_;
  std::vector<std::size_t> touched_;
  std::vector<bool> seen_;
  std::vector<SparseRow> batch_;
  std::uint64_t rows_emitted_ = 0;
};

}  // namespace detail

/// All L with L(p_n(A_1..A_n)) = sum_k p_n(A_1, .., L(A_k), .., A_n) on Alg N.
/// Multilinearity of both sides reduces the rule to unit tuples.
inline MapSpace lie_n_space(const NestSpec& spec, std::size_t n, const Budget& budget = {}) {
  if (n < 2) throw InvalidArgument("lie_n_space needs order n >= 2");
  const AlgBasis basis(spec);
  require_budget(basis, n, budget, "lie_n_space");
  const std::size_t sq = spec.size() * spec.size();
  IncrementalKernel kernel(basis.size() * sq);
  detail::LieConstraintAssembler assembler(basis, n, kernel);
  assembler.run();
  return MapSpace(basis, MapKind::LieN, to_complex(kernel.subspace()));
}

/// All L with L(E_u E_v) = L(E_u) E_v + E_u L(E_v) for every unit pair.
inline MapSpace derivation_space(const NestSpec& spec) {
  const AlgBasis basis(spec);
  const std::size_t n = spec.size();
  const std::size_t sq = n * n;
  IncrementalKernel kernel(basis.size() * sq);
  std::vector<std::int64_t> acc(basis.size() * sq, 0);
  for (std::size_t u = 0; u < basis.size(); ++u)
    for (std::size_t v = 0; v < basis.size(); ++v) {
      const auto [i, j] = basis.unit(u);
      const auto [k, l] = basis.unit(v);
      const auto product = j == k ? basis.index_of(i, l) : std::nullopt;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          std::vector<std::pair<std::size_t, std::int64_t>> terms;
          if (product) terms.emplace_back(*product * sq + r * n + s, 1);
          if (s == l) terms.emplace_back(u * sq + r * n + k, -1);  // (L(E_u) E_kl)(r, s)
          if (r == i) terms.emplace_back(v * sq + j * n + s, -1);  // (E_ij L(E_v))(r, s)
          for (auto& [c, w] : terms) acc[c] += w;
          SparseRow row;
          for (auto& [c, w] : terms)
            if (acc[c] != 0) {
              row.emplace_back(static_cast<std::uint32_t>(c), acc[c]);
              acc[c] = 0;
            }
          std::sort(row.begin(), row.end());
          if (!row.empty()) kernel.add_row(row);
        }
    }
  return MapSpace(basis, MapKind::Derivation, to_complex(kernel.subspace()));
}

/// A tower value p_n(E_u1, ..., E_un) together with its unit tuple.
struct TowerValue {
  std::vector<std::size_t> tuple;
  Mat value;
};

/// Tower values whose coordinates form a basis of K_n = span{p_n(E_u1, ..., E_un)}.
/// Built level by level: K_{k+1} is spanned by [v, E_u] over a basis v of K_k.
inline std::vector<TowerValue> commutator_tower_basis(const NestSpec& spec, std::size_t n) {
  if (n < 1) throw InvalidArgument("commutator tower needs n >= 1");
  const AlgBasis basis(spec);
  std::vector<TowerValue> level;
  for (std::size_t u = 0; u < basis.size(); ++u) level.push_back({{u}, basis.unit_matrix(u)});
  for (std::size_t k = 1; k < n; ++k) {
    EchelonBuilder<GaussianRational> echelon(basis.size());
    std::vector<TowerValue> next;
    for (const auto& p : level)
      for (std::size_t u = 0; u < basis.size(); ++u) {
        const auto [i, j] = basis.unit(u);
        Mat c = commutator_with_unit(p.value, i, j);
        if (!echelon.add(basis.coordinates(c))) continue;
        auto tuple = p.tuple;
        tuple.push_back(u);
        next.push_back({std::move(tuple), std::move(c)});
      }
    level = std::move(next);
  }
  return level;
}

/// K_n in unit coordinates (ambient dimension d).
inline Subspace commutator_value_space(const NestSpec& spec, std::size_t n) {
  const AlgBasis basis(spec);
  std::vector<Vec> coords;
  for (const auto& t : commutator_tower_basis(spec, n)) coords.push_back(basis.coordinates(t.value));
  return Subspace::span(basis.size(), coords);
}

/// Maps H(A) = lambda(A) I with lambda vanishing on K_n.
inline MapSpace central_vanishing_space(const NestSpec& spec, std::size_t n) {
  const AlgBasis basis(spec);
  const auto functionals = annihilator(commutator_value_space(spec, n));
  const Mat id = Mat::identity(spec.size());
  std::vector<LinMap> maps;
  for (const auto& lambda : functionals.basis()) {
    std::vector<Mat> values;
    for (std::size_t u = 0; u < basis.size(); ++u) values.push_back(lambda[u] * id);
    maps.emplace_back(basis, std::move(values));
  }
  return MapSpace::from_maps(basis, MapKind::CentralVanishing, maps);
}

/// Outcome of the Lie n rule check; on failure carries one violated unit tuple.
struct LieCheck {
  bool holds = true;
  std::vector<std::size_t> tuple;  ///< unit indices (0-based) of a violated tuple
  Mat lhs;                         ///< L(p_n(tuple))
  Mat rhs;                         ///< sum_k p_n(..., L(E_uk), ...)
};

/// Exact check of the Lie n rule over every unit tuple.
///
/// The pair (p_k(t), sum_j p_k(t with L in slot j)) is linear in each slot, and
/// extending a k-tuple by E_u maps the pair by
///   (P, S) -> ([P, E_u], [S, E_u] + [P, L(E_u)]).
/// So the pairs of all k-tuples span the same space as the images of a basis
/// of level k-1 pairs; the basis is kept as genuine tuples so a failure names
/// a concrete violated tuple.
inline LieCheck check_lie_n(const LinMap& map, std::size_t n) {
  if (n < 1) throw InvalidArgument("order must be >= 1");
  const AlgBasis& basis = map.basis();
  const std::size_t sq = basis.matrix_size() * basis.matrix_size();
  struct Pair {
    Mat p, s;
    std::vector<std::size_t> tuple;
  };
  auto stacked = [&](const Pair& x) {
    Vec v(x.p.entries());
    v.insert(v.end(), x.s.entries().begin(), x.s.entries().end());
    return v;
  };
  std::vector<Pair> level;
  {
    EchelonBuilder<GaussianRational> echelon(2 * sq);
    for (std::size_t u = 0; u < basis.size(); ++u) {
      Pair x{basis.unit_matrix(u), map.value(u), {u}};
      if (echelon.add(stacked(x))) level.push_back(std::move(x));
    }
  }
  for (std::size_t k = 1; k < n; ++k) {
    EchelonBuilder<GaussianRational> echelon(2 * sq);
    std::vector<Pair> next;
    for (const auto& x : level)
      for (std::size_t u = 0; u < basis.size(); ++u) {
        const auto [i, j] = basis.unit(u);
        Pair y{commutator_with_unit(x.p, i, j),
               commutator_with_unit(x.s, i, j) + commutator(x.p, map.value(u)), x.tuple};
        y.tuple.push_back(u);
        if (echelon.add(stacked(y))) next.push_back(std::move(y));
      }
    level = std::move(next);
  }
  for (auto& x : level) {
    Mat lhs = apply(map, x.p);
    if (lhs != x.s) return {false, x.tuple, std::move(lhs), x.s};
  }
  return {};
}

inline bool is_lie_n(const LinMap& map, std::size_t n) { return check_lie_n(map, n).holds; }

/// Lie n space contained in the Lie (n + k(n-1)) space.
inline bool check_promotion(const NestSpec& spec, std::size_t n, std::size_t k, const Budget& budget = {}) {
  const auto low = lie_n_space(spec, n, budget);
  const auto high = lie_n_space(spec, n + k * (n - 1), budget);
  return low.is_subspace_of(high);
}

struct IdentityImage {
  bool scalar = false;
  std::optional<GaussianRational> lambda;
};

/// Whether L(I) lies in C I, and the scalar if so.
inline IdentityImage check_identity_image(const LinMap& map) {
  const Mat image = apply(map, Mat::identity(map.basis().matrix_size()));
  GaussianRational lambda;
  if (is_scalar_matrix(image, &lambda)) return {true, lambda};
  return {false, std::nullopt};
}

/// L*(iota(A)) = iota(L(A)), a map on the dual nest algebra.
inline LinMap adjoint_transfer(const LinMap& map) {
  const auto dual = dual_nest(map.spec());
  const AlgBasis dual_basis(dual.spec);
  std::vector<Mat> values;
  for (std::size_t u = 0; u < dual_basis.size(); ++u) values.push_back(iota(map.value(dual.reindex[u])));
  return LinMap(dual_basis, std::move(values));
}

}  // namespace nestlie
