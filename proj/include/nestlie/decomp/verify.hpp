#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nestlie/decomp/certificate.hpp"
#include "nestlie/exactla.hpp"

namespace nestlie {

/// Outcome of each check made by the verifier.
struct VerifyReport {
  bool shapes = false;
  bool sum = false;
  bool leibniz = false;
  bool scalar = false;
  bool kills_kn = false;
  bool lie_n = false;
  std::string failure;

  bool ok() const { return shapes && sum && leibniz && scalar && kills_kn && lie_n; }
};

namespace verifier {

/// The block upper-triangular unit pattern, rebuilt from the block sizes.
struct Units {
  std::size_t n = 0;
  std::vector<std::size_t> row, col;
  std::vector<long> index;  ///< row-major (i, j) -> unit index, or -1

  explicit Units(const std::vector<std::size_t>& blocks) {
    std::vector<std::size_t> block;
    for (std::size_t p = 0; p < blocks.size(); ++p)
      for (std::size_t k = 0; k < blocks[p]; ++k) block.push_back(p);
    n = block.size();
    index.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (block[i] <= block[j]) {
          index[i * n + j] = static_cast<long>(row.size());
          row.push_back(i);
          col.push_back(j);
        }
  }
  std::size_t size() const { return row.size(); }
  Mat unit(std::size_t u) const { return Mat::unit(n, row[u], col[u]); }
};

/// L(A) for A in the algebra, by expanding A over the units.
inline Mat image(const Units& units, const std::vector<Mat>& values, const Mat& a) {
  Mat out(units.n, units.n);
  for (std::size_t i = 0; i < units.n; ++i)
    for (std::size_t j = 0; j < units.n; ++j) {
      if (a(i, j).is_zero()) continue;
      const long u = units.index[i * units.n + j];
      if (u < 0) throw NotInAlgebra("verifier: argument leaves the algebra");
      out += a(i, j) * values[static_cast<std::size_t>(u)];
    }
  return out;
}

inline Vec stack(const Mat& a, const Mat& b) {
  Vec v = a.entries();
  v.insert(v.end(), b.entries().begin(), b.entries().end());
  return v;
}

}  // namespace verifier

/// Rechecks a certificate from scratch with plain matrix arithmetic:
/// L = D + H, D satisfies Leibniz on every unit pair, every H(E_u) is scalar,
/// H vanishes on the span of all n-fold commutator towers, and L is Lie n.
inline VerifyReport verify_certificate_report(const Certificate& c) {
  VerifyReport rep;
  const verifier::Units units(c.spec.blocks());
  const std::size_t n = units.n;
  const std::size_t d = units.size();
  const auto& lv = c.L.values();
  const auto& dv = c.D.values();
  const auto& hv = c.H.values();
  auto fail = [&](const std::string& why) {
    rep.failure = why;
    return rep;
  };

  if (c.n < 2) return fail("order below 2");
  for (const auto* vs : {&lv, &dv, &hv}) {
    if (vs->size() != d) return fail("value count does not match the algebra dimension");
    for (const auto& m : *vs)
      if (m.rows() != n || m.cols() != n) return fail("value has the wrong size");
  }
  rep.shapes = true;

  for (std::size_t u = 0; u < d; ++u)
    if (lv[u] != dv[u] + hv[u]) return fail("L != D + H on unit " + std::to_string(u));
  rep.sum = true;

  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      const Mat prod = mat_mul(units.unit(u), units.unit(v));
      const Mat lhs = verifier::image(units, dv, prod);
      const Mat rhs = mat_mul(dv[u], units.unit(v)) + mat_mul(units.unit(u), dv[v]);
      if (lhs != rhs) return fail("Leibniz fails on units " + std::to_string(u) + ", " + std::to_string(v));
    }
  rep.leibniz = true;

  std::vector<GaussianRational> lambda(d);
  for (std::size_t u = 0; u < d; ++u) {
    const Mat& h = hv[u];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i == j ? h(i, i) != h(0, 0) : !h(i, j).is_zero()) return fail("H is not scalar on unit " + std::to_string(u));
    lambda[u] = h(0, 0);
  }
  rep.scalar = true;

  // Towers: span of p_k over all unit k-tuples, grown one commutator at a time.
  std::vector<Mat> towers;
  for (std::size_t u = 0; u < d; ++u) towers.push_back(units.unit(u));
  for (std::size_t k = 1; k < c.n; ++k) {
    EchelonBuilder<GaussianRational> ech(n * n);
    std::vector<Mat> next;
    for (const auto& p : towers)
      for (std::size_t u = 0; u < d; ++u) {
        Mat q = commutator(p, units.unit(u));
        if (ech.add(q.entries())) next.push_back(std::move(q));
      }
    towers = std::move(next);
  }
  for (const auto& t : towers) {
    GaussianRational s;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (t(i, j).is_zero()) continue;
        const long u = units.index[i * n + j];
        if (u < 0) return fail("commutator tower leaves the algebra");
        s += t(i, j) * lambda[static_cast<std::size_t>(u)];
      }
    if (!s.is_zero()) return fail("H does not vanish on a commutator tower");
  }
  rep.kills_kn = true;

  // Lie n rule: pairs (p_k(t), sum_j p_k(t with L in slot j)) span, level by level.
  std::vector<std::pair<Mat, Mat>> level;
  {
    EchelonBuilder<GaussianRational> ech(2 * n * n);
    for (std::size_t u = 0; u < d; ++u)
      if (ech.add(verifier::stack(units.unit(u), lv[u]))) level.emplace_back(units.unit(u), lv[u]);
  }
  for (std::size_t k = 1; k < c.n; ++k) {
    EchelonBuilder<GaussianRational> ech(2 * n * n);
    std::vector<std::pair<Mat, Mat>> next;
    for (const auto& [p, s] : level)
      for (std::size_t u = 0; u < d; ++u) {
        const Mat e = units.unit(u);
        Mat p2 = commutator(p, e);
        Mat s2 = commutator(s, e) + commutator(p, lv[u]);
        if (ech.add(verifier::stack(p2, s2))) next.emplace_back(std::move(p2), std::move(s2));
      }
    level = std::move(next);
  }
  for (const auto& [p, s] : level)
    if (verifier::image(units, lv, p) != s) return fail("L violates the Lie n rule");
  rep.lie_n = true;
  return rep;
}

inline bool verify_certificate(const Certificate& c) {
  try {
    return verify_certificate_report(c).ok();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace nestlie
