#pragma once

#include <cstddef>
#include <optional>

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/liemaps/linmap.hpp"
#include "nestlie/nestalg/nest.hpp"

namespace nestlie {

/// h(x, f) = f(L(x (x) f) x) / f(x), and 0 when f(x) = 0.
inline GaussianRational h_probe(const LinMap& map, const Vec& x, const Vec& f) {
  const std::size_t n = map.basis().matrix_size();
  if (x.size() != n || f.size() != n) throw DimensionMismatch("h_probe: length mismatch");
  const Mat r1 = rank_one(x, f);
  if (!contains(map.spec(), r1)) throw NotInAlgebra("h_probe: x (x) f is not in Alg N");
  const GaussianRational fx = pair<GaussianRational>(f, x);
  if (fx.is_zero()) return {};
  const Vec image = mat_vec<GaussianRational>(apply(map, r1), x);
  return pair<GaussianRational>(f, image) / fx;
}

/// Matrix of x -> (L(x (x) f) - h(x, f) I) y. Needs f in X_-^perp, f(y) = 1.
/// Every x (x) f then lies in Alg N, so the matrix is determined on all of X.
inline Mat phi_probe(const LinMap& map, const Vec& f, const Vec& y) {
  const NestSpec& spec = map.spec();
  const std::size_t n = spec.size();
  if (f.size() != n || y.size() != n) throw DimensionMismatch("phi_probe: length mismatch");
  if (is_zero_vector<GaussianRational>(f) || !x_minus_perp(spec).contains(f))
    throw InvalidArgument("phi_probe: f must be a nonzero element of X_-^perp");
  if (!pair<GaussianRational>(f, y).is_one()) throw InvalidArgument("phi_probe: f(y) must be 1");
  Mat phi(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const Vec e = basis_vector(n, c);
    Mat m = apply(map, rank_one(e, f));
    const GaussianRational h = h_probe(map, e, f);
    if (!h.is_zero())
      for (std::size_t i = 0; i < n; ++i) m(i, i) -= h;
    const Vec col = mat_vec<GaussianRational>(m, y);
    for (std::size_t r = 0; r < n; ++r) phi(r, c) = col[r];
  }
  return phi;
}

/// The functional phi with L(x (x) f) = Phi x (x) f + x (x) phi + h(x, f) I and
/// phi(y) = 0, read off the residual. Empty when the residual is not of the
/// form x (x) phi with phi(y) = 0.
inline std::optional<Vec> phi_functional(const LinMap& map, const Vec& x, const Vec& f, const Vec& y) {
  const std::size_t n = map.basis().matrix_size();
  if (is_zero_vector<GaussianRational>(x)) throw InvalidArgument("phi_functional: x must be nonzero");
  const Mat phi = phi_probe(map, f, y);
  Mat residual = apply(map, rank_one(x, f)) - rank_one(mat_vec<GaussianRational>(phi, x), f);
  const GaussianRational h = h_probe(map, x, f);
  for (std::size_t i = 0; i < n; ++i) residual(i, i) -= h;
  std::size_t pivot = 0;
  while (x[pivot].is_zero()) ++pivot;
  Vec functional(n);
  for (std::size_t s = 0; s < n; ++s) functional[s] = residual(pivot, s) / x[pivot];
  if (rank_one(x, functional) != residual) return std::nullopt;
  if (!pair<GaussianRational>(functional, y).is_zero()) return std::nullopt;
  return functional;
}

}  // namespace nestlie
