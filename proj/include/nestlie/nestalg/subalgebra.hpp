#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/nestalg/nest.hpp"
#include "nestlie/random.hpp"

namespace nestlie {

/// Subalgebra of Alg N given by a spanning set of matrices. The span is
/// checked to lie in Alg N and to be closed under products on construction.
class SubalgebraSpec {
 public:
  SubalgebraSpec(NestSpec spec, const std::vector<Mat>& generators) : spec_(std::move(spec)) {
    const std::size_t n = spec_.size();
    std::vector<Vec> vs;
    for (const auto& g : generators) {
      if (g.rows() != n || g.cols() != n) throw DimensionMismatch("subalgebra generator has wrong size");
      if (!contains(spec_, g)) throw NotInAlgebra("subalgebra generator is not in Alg N");
      vs.push_back(g.entries());
    }
    span_ = Subspace::span(n * n, vs);
    for (const auto& a : span_.basis())
      for (const auto& b : span_.basis())
        if (!span_.contains(mat_mul(as_matrix(a), as_matrix(b)).entries()))
          throw SchemaError("span is not closed under products");
    closed_under_product_ = true;
  }

  static SubalgebraSpec full(const NestSpec& spec) {
    const AlgBasis basis(spec);
    std::vector<Mat> units;
    for (std::size_t u = 0; u < basis.size(); ++u) units.push_back(basis.unit_matrix(u));
    return SubalgebraSpec(spec, units);
  }

  const NestSpec& spec() const { return spec_; }
  /// Span inside the N^2-dimensional operator space (row-major coordinates).
  const Subspace& span() const { return span_; }
  bool closed_under_product() const { return closed_under_product_; }
  std::size_t dim() const { return span_.dim(); }

  std::vector<Mat> basis_matrices() const {
    std::vector<Mat> out;
    for (const auto& v : span_.basis()) out.push_back(as_matrix(v));
    return out;
  }

  bool contains_matrix(const Mat& m) const { return span_.contains(m.entries()); }

  Mat as_matrix(const Vec& v) const { return Mat(spec_.size(), spec_.size(), v); }

 private:
  NestSpec spec_;
  Subspace span_;
  bool closed_under_product_ = false;
};

enum class Verdict { Proved, Refuted, SampledConsistent, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "PROVED";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::SampledConsistent: return "SAMPLED-CONSISTENT";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

/// One verdict per spade condition, in order.
struct ConditionReport {
  std::array<Verdict, 6> spade{};
  std::uint64_t seed = 0;
};

namespace detail {

/// Rank-one structure of a subalgebra S. Write X(S) for the x with some
/// x (x) f in S (f != 0) and F(S) for the f in X_-^perp with some such x.
class RankOneProbe {
 public:
  explicit RankOneProbe(const SubalgebraSpec& sub)
      : sub_(sub), n_(sub.spec().size()), annihilator_(annihilator(sub.span())) {}

  std::size_t size() const { return n_; }

  /// {f : x (x) f in S}
  Subspace functionals_for(const Vec& x) const {
    Mat m(annihilator_.dim(), n_);
    for (std::size_t k = 0; k < annihilator_.dim(); ++k) {
      const auto& a = annihilator_.basis()[k];
      for (std::size_t r = 0; r < n_; ++r)
        if (!x[r].is_zero())
          for (std::size_t s = 0; s < n_; ++s) m(k, s) += a[r * n_ + s] * x[r];
    }
    return kernel(std::move(m));
  }

  /// {x : x (x) f in S}
  Subspace vectors_for(const Vec& f) const {
    Mat m(annihilator_.dim(), n_);
    for (std::size_t k = 0; k < annihilator_.dim(); ++k) {
      const auto& a = annihilator_.basis()[k];
      for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t s = 0; s < n_; ++s)
          if (!f[s].is_zero()) m(k, r) += a[r * n_ + s] * f[s];
    }
    return kernel(std::move(m));
  }

  bool in_x_of_s(const Vec& x) const { return !is_zero_vector<GaussianRational>(x) && functionals_for(x).dim() > 0; }

  bool in_f_of_s(const Vec& f, const Subspace& w) const {
    if (is_zero_vector<GaussianRational>(f)) return true;
    return w.contains(f) && vectors_for(f).dim() > 0;
  }

 private:
  const SubalgebraSpec& sub_;
  std::size_t n_;
  Subspace annihilator_;
};

inline Vec random_combination(const Subspace& s, Rng& rng) {
  Vec v(s.ambient_dim());
  for (const auto& b : s.basis()) {
    const auto c = rng.small_gaussian();
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!b[i].is_zero()) v[i] += c * b[i];
  }
  return v;
}

inline Vec transpose_apply(const Mat& a, const Vec& f) { return mat_vec<GaussianRational>(transpose(a), f); }

}  // namespace detail

/// Decides the six spade conditions for a subalgebra.
///
/// F(S) always lies in L1, the span of the rows of elements of S whose
/// columns outside the last block vanish, and X(S) lies in C1, the span of
/// all columns of elements of S. A probe x with {f : x (x) f in S} containing
/// L1 shows F(S) = L1; a probe f with {x : x (x) f in S} containing C1 shows
/// X(S) = C1. Conditions 1 to 3 are settled by such certificates or by exact
/// counterexamples; conditions 4 to 6 are checked on basis vectors and on 100
/// seeded samples. A condition neither certificate reaches is UNDECIDED.
inline ConditionReport check_spade(const SubalgebraSpec& sub, std::uint64_t seed = 0) {
  constexpr int kSamples = 100;
  const NestSpec& spec = sub.spec();
  const std::size_t n = spec.size();
  const detail::RankOneProbe probe(sub);
  Rng rng(seed);
  ConditionReport report;
  report.seed = seed;

  const Subspace w = x_minus_perp(spec);
  const Subspace x_minus = nest_element(spec, spec.depth() - 1);
  const std::size_t first_last = spec.nest_dim(spec.depth() - 1);

  std::vector<Vec> rows, cols;
  for (const auto& a : sub.basis_matrices())
    for (std::size_t c = 0; c < n; ++c) {
      Vec col(n);
      for (std::size_t r = 0; r < n; ++r) col[r] = a(r, c);
      cols.push_back(std::move(col));
    }
  // R = S intersected with matrices supported on the last-block columns.
  Subspace last_cols_support;
  {
    std::vector<Vec> support;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = first_last; c < n; ++c) support.push_back(Mat::unit(n, r, c).entries());
    last_cols_support = Subspace::span(n * n, support);
  }
  const Subspace r_space = intersect(sub.span(), last_cols_support);
  for (const auto& v : r_space.basis()) {
    const Mat a = sub.as_matrix(v);
    for (std::size_t r = 0; r < n; ++r) rows.emplace_back(a.row(r).begin(), a.row(r).end());
  }
  const Subspace l1 = Subspace::span(n, rows);
  const Subspace c1 = Subspace::span(n, cols);

  // Probe vectors: basis of C1, standard basis, and pairwise sums of both.
  std::vector<Vec> x_probes = c1.basis();
  for (std::size_t i = 0; i < n; ++i) x_probes.push_back(basis_vector(n, i));
  for (std::size_t i = 0; i + 1 < c1.dim(); ++i) {
    Vec s = c1.basis()[i];
    for (std::size_t k = 0; k < n; ++k) s[k] += c1.basis()[i + 1][k];
    x_probes.push_back(std::move(s));
  }
  std::vector<Vec> f_probes = l1.basis();
  for (const auto& b : w.basis()) f_probes.push_back(b);

  bool f_certified = false;
  for (const auto& x : x_probes) {
    if (is_zero_vector<GaussianRational>(x)) continue;
    if (l1.is_subspace_of(intersect(probe.functionals_for(x), w))) {
      f_certified = true;
      break;
    }
  }
  bool x_certified = false;
  for (const auto& f : f_probes) {
    if (is_zero_vector<GaussianRational>(f)) continue;
    if (c1.is_subspace_of(probe.vectors_for(f))) {
      x_certified = true;
      break;
    }
  }

  auto sample_f = [&]() { return detail::random_combination(l1, rng); };
  auto sample_x = [&]() { return detail::random_combination(c1, rng); };

  // Condition 1: F(S) is a nonzero linear space.
  Verdict& s1 = report.spade[0];
  if (l1.dim() == 0) {
    s1 = Verdict::Refuted;
  } else if (f_certified) {
    s1 = Verdict::Proved;
  } else {
    s1 = Verdict::Undecided;
    std::vector<Vec> members;
    for (const auto& b : l1.basis())
      if (probe.in_f_of_s(b, w)) members.push_back(b);
    for (std::size_t i = 0; i < members.size() && s1 == Verdict::Undecided; ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        Vec s = members[i];
        for (std::size_t k = 0; k < n; ++k) s[k] += members[j][k];
        if (!probe.in_f_of_s(s, w)) {
          s1 = Verdict::Refuted;
          break;
        }
      }
    if (s1 == Verdict::Undecided && members.empty()) s1 = Verdict::Refuted;
  }

  // Condition 2: every f in F(S) pairs with some y outside X_-.
  Verdict& s2 = report.spade[1];
  s2 = Verdict::Undecided;
  for (const auto& y : x_probes)
    if (!x_minus.contains(y) && l1.is_subspace_of(probe.functionals_for(y))) {
      s2 = Verdict::Proved;
      break;
    }
  if (s2 != Verdict::Proved) {
    auto refutes = [&](const Vec& f) {
      return !is_zero_vector<GaussianRational>(f) && probe.in_f_of_s(f, w) &&
             probe.vectors_for(f).is_subspace_of(x_minus);
    };
    for (const auto& f : l1.basis())
      if (refutes(f)) s2 = Verdict::Refuted;
    for (int t = 0; t < kSamples && s2 != Verdict::Refuted; ++t)
      if (refutes(sample_f())) s2 = Verdict::Refuted;
  }

  // Condition 3: x (x) f in S for all x in X(S), f in F(S).
  Verdict& s3 = report.spade[2];
  {
    bool all_pairs = true;
    bool counterexample = false;
    for (const auto& x : c1.basis())
      for (const auto& f : l1.basis()) {
        const bool in = sub.contains_matrix(rank_one(x, f));
        all_pairs = all_pairs && in;
        if (!in && probe.in_x_of_s(x) && probe.in_f_of_s(f, w)) counterexample = true;
      }
    s3 = all_pairs ? Verdict::Proved : counterexample ? Verdict::Refuted : Verdict::Undecided;
  }

  // Condition 4: dim(X(S) cap ker f_i) > 1 and X(S) cap ker f_1 cap ker f_2 != 0.
  Verdict& s4 = report.spade[3];
  {
    auto kernel_of = [&](const Vec& f) {
      Mat m(1, n);
      for (std::size_t k = 0; k < n; ++k) m(0, k) = f[k];
      return kernel(std::move(m));
    };
    auto holds = [&](const Vec& f1, const Vec& f2) {
      const Subspace k1 = intersect(c1, kernel_of(f1));
      const Subspace k2 = intersect(c1, kernel_of(f2));
      return k1.dim() > 1 && k2.dim() > 1 && intersect(k1, k2).dim() > 0;
    };
    bool ok = true;
    const auto& fb = l1.basis();
    for (std::size_t i = 0; i < fb.size() && ok; ++i)
      for (std::size_t j = i; j < fb.size() && ok; ++j) ok = holds(fb[i], fb[j]);
    for (int t = 0; t < kSamples && ok; ++t) ok = holds(sample_f(), sample_f());
    if (l1.dim() == 0) ok = c1.dim() > 1;
    // C1 bounds X(S) from above, so a failure is exact; success needs X(S) = C1.
    s4 = !ok ? Verdict::Refuted : x_certified ? Verdict::SampledConsistent : Verdict::Undecided;
  }

  // Condition 5: X(S) = X.
  Verdict& s5 = report.spade[4];
  {
    bool ok = c1.dim() == n;
    for (std::size_t i = 0; i < n && ok; ++i) ok = probe.in_x_of_s(basis_vector(n, i));
    for (int t = 0; t < kSamples && ok; ++t) {
      Vec x(n);
      for (auto& v : x) v = rng.small_gaussian();
      if (!is_zero_vector<GaussianRational>(x)) ok = probe.in_x_of_s(x);
    }
    s5 = ok ? Verdict::SampledConsistent : Verdict::Refuted;
  }

  // Condition 6: A x in X(S) and A^T f in F(S).
  Verdict& s6 = report.spade[5];
  {
    const auto mats = sub.basis_matrices();
    bool ok = true;
    auto check = [&](const Mat& a, const Vec& x, const Vec& f) {
      if (probe.in_x_of_s(x)) {
        const Vec ax = mat_vec<GaussianRational>(a, x);
        if (!is_zero_vector<GaussianRational>(ax) && !probe.in_x_of_s(ax)) return false;
      }
      if (probe.in_f_of_s(f, w) && !probe.in_f_of_s(detail::transpose_apply(a, f), w)) return false;
      return true;
    };
    const Vec zero_f(n);
    for (const auto& a : mats) {
      for (const auto& x : c1.basis())
        if (!(ok = check(a, x, zero_f))) break;
      for (const auto& f : l1.basis())
        if (ok && !(ok = check(a, Vec(n), f))) break;
      if (!ok) break;
    }
    for (int t = 0; t < kSamples && ok && !mats.empty(); ++t) {
      Mat a(n, n);
      for (const auto& m : mats) a += rng.small_gaussian() * m;
      ok = check(a, sample_x(), sample_f());
    }
    s6 = ok ? Verdict::SampledConsistent : Verdict::Refuted;
  }
  return report;
}

}  // namespace nestlie
