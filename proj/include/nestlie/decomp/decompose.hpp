#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "nestlie/decomp/certificate.hpp"
#include "nestlie/decomp/probes.hpp"
#include "nestlie/decomp/verify.hpp"
#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/liemaps/linmap.hpp"
#include "nestlie/liemaps/spaces.hpp"
#include "nestlie/nestalg/nest.hpp"

namespace nestlie {

/// The spaces a generic decomposition solves over, computed once per (spec, n).
struct StandardFormSpaces {
  MapSpace derivations;
  MapSpace central_vanishing;
};

inline StandardFormSpaces standard_form_spaces(const NestSpec& spec, std::size_t n) {
  return {derivation_space(spec), central_vanishing_space(spec, n)};
}

/// Derivations with values in C I.
inline MapSpace central_derivations(const NestSpec& spec) {
  const AlgBasis basis(spec);
  const Mat id = Mat::identity(spec.size());
  std::vector<LinMap> scalar_maps;
  for (std::size_t u = 0; u < basis.size(); ++u) {
    LinMap m = LinMap::zero(basis);
    m.value(u) = id;
    scalar_maps.push_back(std::move(m));
  }
  const MapSpace scalar = MapSpace::from_maps(basis, MapKind::Derivation, scalar_maps);
  return MapSpace(basis, MapKind::Derivation, intersect(derivation_space(spec).coefficients(), scalar.coefficients()));
}

/// Some T with D = [T, .] on every unit, or nothing if D is not inner.
inline std::optional<Mat> try_inner(const LinMap& map) {
  const AlgBasis& basis = map.basis();
  const std::size_t n = basis.matrix_size();
  Mat system(basis.size() * n * n, n * n);
  Vec rhs;
  std::size_t row = 0;
  for (std::size_t u = 0; u < basis.size(); ++u) {
    const auto [a, b] = basis.unit(u);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s, ++row) {
        // [T, E_ab](r, s) = T(r, a) [s == b] - [r == a] T(b, s)
        if (s == b) system(row, r * n + a) += 1;
        if (r == a) system(row, b * n + s) -= 1;
        rhs.push_back(map.value(u)(r, s));
      }
  }
  const auto t = solve(system, rhs);
  if (!t) return std::nullopt;
  return Mat(n, n, *t);
}

namespace detail {

inline std::optional<TheoremViolation> leibniz_violation(const LinMap& d) {
  const AlgBasis& basis = d.basis();
  for (std::size_t u = 0; u < basis.size(); ++u)
    for (std::size_t v = 0; v < basis.size(); ++v) {
      const Mat eu = basis.unit_matrix(u);
      const Mat ev = basis.unit_matrix(v);
      Mat lhs = apply(d, mat_mul(eu, ev));
      Mat rhs = mat_mul(d.value(u), ev) + mat_mul(eu, d.value(v));
      if (lhs != rhs) return TheoremViolation{"leibniz", {basis.unit(u), basis.unit(v)}, std::move(lhs), std::move(rhs)};
    }
  return std::nullopt;
}

inline std::optional<TheoremViolation> scalar_violation(const LinMap& h) {
  for (std::size_t u = 0; u < h.basis().size(); ++u) {
    const Mat& m = h.value(u);
    if (!is_scalar_matrix(m)) {
      Mat rhs = m(0, 0) * Mat::identity(m.rows());
      return TheoremViolation{"scalar", {h.basis().unit(u)}, m, std::move(rhs)};
    }
  }
  return std::nullopt;
}

inline std::optional<TheoremViolation> kn_violation(const LinMap& h, std::size_t n) {
  for (const auto& t : commutator_tower_basis(h.spec(), n)) {
    Mat image = apply(h, t.value);
    if (!image.is_zero())
      return TheoremViolation{"K_n", units_of(h.basis(), t.tuple), std::move(image), Mat(image.rows(), image.cols())};
  }
  return std::nullopt;
}

inline Certificate finish(Certificate c) {
  c.verified = verify_certificate(c);
  return c;
}

}  // namespace detail

/// Solves L = D + H over the derivation and central vanishing bases.
/// Free parameters (if the two spaces meet) are set to zero.
inline Certificate decompose_generic(const LinMap& map, std::size_t n, const StandardFormSpaces& spaces) {
  require_lie_n(map, n);
  const auto& der = spaces.derivations.coefficients().basis();
  const auto& cv = spaces.central_vanishing.coefficients().basis();
  const Vec target = map.coefficients();
  Mat system(target.size(), der.size() + cv.size());
  for (std::size_t k = 0; k < der.size(); ++k)
    for (std::size_t r = 0; r < target.size(); ++r) system(r, k) = der[k][r];
  for (std::size_t k = 0; k < cv.size(); ++k)
    for (std::size_t r = 0; r < target.size(); ++r) system(r, der.size() + k) = cv[k][r];
  const auto x = solve(system, target);
  if (!x) {
    const Mat lhs = apply(map, Mat::identity(map.basis().matrix_size()));
    throw TheoremViolationError({"sum", {}, lhs, Mat(lhs.rows(), lhs.cols())});
  }
  GenericWitness w;
  w.derivation_coords.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(der.size()));
  w.central_coords.assign(x->begin() + static_cast<std::ptrdiff_t>(der.size()), x->end());
  Certificate c{map.spec(), n, Route::Generic, map,
                spaces.derivations.combination(w.derivation_coords),
                spaces.central_vanishing.combination(w.central_coords), w, false};
  return detail::finish(std::move(c));
}

inline Certificate decompose_generic(const LinMap& map, std::size_t n) {
  return decompose_generic(map, n, standard_form_spaces(map.spec(), n));
}

/// Constructive decomposition when X_-^perp is one-dimensional (last block 1).
///
/// P = x0 (x) f0, Q = I - P, T = P L(Q) Q - Q L(Q) P, and L~ = L - [T, .].
/// The algebra splits as P A P + Q A P + Q A Q; H is f0(L~(A) x0) on Q A Q,
/// the Q-block scalar of L~(A) on P A P, and 0 on Q A P. Then D = L - H.
inline Certificate decompose_dim1(const LinMap& map, std::size_t n) {
  const NestSpec& spec = map.spec();
  const Subspace w = x_minus_perp(spec);
  if (w.dim() != 1) throw RouteInapplicable("route DIM1 needs dim X_-^perp = 1, have " + std::to_string(w.dim()));
  require_lie_n(map, n);
  const AlgBasis& basis = map.basis();
  const std::size_t size = spec.size();

  Dim1Witness wit;
  wit.f0 = w.basis()[0];
  std::size_t lead = 0;
  while (wit.f0[lead].is_zero()) ++lead;
  const GaussianRational scale = wit.f0[lead];
  for (auto& v : wit.f0) v = v / scale;
  wit.x0 = basis_vector(size, lead);
  wit.P = rank_one(wit.x0, wit.f0);
  wit.Q = Mat::identity(size) - wit.P;
  const Mat lq = apply(map, wit.Q);
  wit.T = mat_mul(mat_mul(wit.P, lq), wit.Q) - mat_mul(mat_mul(wit.Q, lq), wit.P);
  const LinMap tilde = map - inner_derivation(basis, wit.T);

  // A coordinate inside Q X, where the Q-block scalar is read.
  std::size_t q_coord = 0;
  while (q_coord == lead) ++q_coord;

  const Mat id = Mat::identity(size);
  std::vector<Mat> h_values;
  for (std::size_t u = 0; u < basis.size(); ++u) {
    const Mat e = basis.unit_matrix(u);
    const bool p_left = mat_mul(wit.P, e) == e;
    const bool p_right = mat_mul(e, wit.P) == e;
    const Mat& lt = tilde.value(u);
    GaussianRational h;
    if (p_left && p_right) {
      h = lt(q_coord, q_coord);
      wit.h11.push_back(h);
    } else if (!p_right) {
      h = pair<GaussianRational>(wit.f0, mat_vec<GaussianRational>(lt, wit.x0));
      wit.h22.push_back(h);
    }
    h_values.push_back(h * id);
  }
  LinMap h(basis, std::move(h_values));
  LinMap d = map - h;
  if (auto v = detail::leibniz_violation(d)) throw TheoremViolationError(std::move(*v));
  return detail::finish({spec, n, Route::Dim1, map, std::move(d), std::move(h), wit, false});
}

/// Constructive decomposition when X_-^perp has dimension > 1 and N > 2:
/// D = [Phi_{f,y}, .] for the first echelon f in X_-^perp and the first unit
/// vector y with f(y) = 1, and H = L - D.
inline Certificate decompose_general(const LinMap& map, std::size_t n) {
  const NestSpec& spec = map.spec();
  const Subspace w = x_minus_perp(spec);
  if (w.dim() < 2) throw RouteInapplicable("route GENERAL needs dim X_-^perp > 1, have " + std::to_string(w.dim()));
  if (spec.size() <= 2) throw RouteInapplicable("route GENERAL needs N > 2");
  require_lie_n(map, n);
  const AlgBasis& basis = map.basis();
  const std::size_t size = spec.size();

  GeneralWitness wit;
  wit.f = w.basis()[0];
  std::size_t y_coord = 0;
  while (!wit.f[y_coord].is_one()) ++y_coord;
  wit.y = basis_vector(size, y_coord);
  wit.phi = phi_probe(map, wit.f, wit.y);
  for (std::size_t i = 0; i < size; ++i) wit.h_table.push_back(h_probe(map, basis_vector(size, i), wit.f));

  LinMap d = inner_derivation(basis, wit.phi);
  LinMap h = map - d;
  if (auto v = detail::scalar_violation(h)) throw TheoremViolationError(std::move(*v));
  if (auto v = detail::kn_violation(h, n)) throw TheoremViolationError(std::move(*v));
  return detail::finish({spec, n, Route::General, map, std::move(d), std::move(h), wit, false});
}

/// Route chosen by dim X_-^perp: DIM1 when it is 1, GENERAL when larger and N > 2.
inline Route default_route(const NestSpec& spec) {
  if (spec.last_block() == 1) return Route::Dim1;
  if (spec.size() > 2) return Route::General;
  return Route::Generic;
}

inline Certificate decompose(const LinMap& map, std::size_t n, Route route) {
  switch (route) {
    case Route::Dim1: return decompose_dim1(map, n);
    case Route::General: return decompose_general(map, n);
    case Route::Generic: break;
  }
  return decompose_generic(map, n);
}

/// Image of a certificate under iota: each of L, D, H is transferred to the
/// dual nest. The witness is replaced by a generic one with no coordinates.
inline Certificate transfer_certificate(const Certificate& c) {
  LinMap l = adjoint_transfer(c.L);
  Certificate out{l.spec(), c.n, Route::Generic, l, adjoint_transfer(c.D), adjoint_transfer(c.H), GenericWitness{}, false};
  return detail::finish(std::move(out));
}

}  // namespace nestlie
