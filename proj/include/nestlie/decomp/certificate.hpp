#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/liemaps/linmap.hpp"
#include "nestlie/liemaps/spaces.hpp"
#include "nestlie/nestalg/nest.hpp"

namespace nestlie {

enum class Route { Generic, Dim1, General };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::Generic: return "GENERIC";
    case Route::Dim1: return "DIM1";
    case Route::General: return "GENERAL";
  }
  return "?";
}

/// Coordinates of D and H in the derivation / central vanishing bases.
struct GenericWitness {
  Vec derivation_coords;
  Vec central_coords;
};

/// Peirce data for the case where the last block has size one.
struct Dim1Witness {
  Vec f0;
  Vec x0;
  Mat P;
  Mat Q;
  Mat T;
  std::vector<GaussianRational> h11;  ///< H on the units of P A P
  std::vector<GaussianRational> h22;  ///< H on the units of Q A Q, in unit order
};

/// Data for the case where the last block has size at least two.
struct GeneralWitness {
  Vec f;
  Vec y;
  Mat phi;
  std::vector<GaussianRational> h_table;  ///< h(e_i, f) for each coordinate vector e_i
};

using Witness = std::variant<GenericWitness, Dim1Witness, GeneralWitness>;

struct Certificate {
  NestSpec spec;
  std::size_t n = 2;
  Route route = Route::Generic;
  LinMap L;
  LinMap D;
  LinMap H;
  Witness witness;
  bool verified = false;
};

/// A failed identity that the standard-form results say cannot fail.
struct TheoremViolation {
  std::string identity;             ///< "leibniz", "scalar", "K_n" or "sum"
  std::vector<MatrixUnit> units;    ///< unit pair for leibniz, tuple otherwise
  Mat lhs;
  Mat rhs;
};

class TheoremViolationError : public Error {
 public:
  explicit TheoremViolationError(TheoremViolation v)
      : Error("theorem violation: identity '" + v.identity + "' fails"), violation_(std::move(v)) {}
  const TheoremViolation& violation() const noexcept { return violation_; }

 private:
  TheoremViolation violation_;
};

/// The input map does not satisfy the Lie n rule.
class NotLieN : public Error {
 public:
  NotLieN(std::vector<MatrixUnit> tuple, Mat lhs, Mat rhs)
      : Error("map is not a Lie n-derivation"), tuple_(std::move(tuple)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}
  const std::vector<MatrixUnit>& tuple() const noexcept { return tuple_; }
  const Mat& lhs() const noexcept { return lhs_; }
  const Mat& rhs() const noexcept { return rhs_; }

 private:
  std::vector<MatrixUnit> tuple_;
  Mat lhs_;
  Mat rhs_;
};

inline std::vector<MatrixUnit> units_of(const AlgBasis& basis, const std::vector<std::size_t>& idx) {
  std::vector<MatrixUnit> out;
  for (auto u : idx) out.push_back(basis.unit(u));
  return out;
}

inline void require_lie_n(const LinMap& map, std::size_t n) {
  auto check = check_lie_n(map, n);
  if (!check.holds) throw NotLieN(units_of(map.basis(), check.tuple), std::move(check.lhs), std::move(check.rhs));
}

}  // namespace nestlie
