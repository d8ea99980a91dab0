#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "nestlie/decomp/certificate.hpp"
#include "nestlie/errors.hpp"
#include "nestlie/exactla.hpp"
#include "nestlie/liemaps/linmap.hpp"
#include "nestlie/liemaps/spaces.hpp"
#include "nestlie/nestalg/nest.hpp"
#include "nestlie/nestalg/subalgebra.hpp"

namespace nestlie::io {

using Json = nlohmann::ordered_json;

// ---- encoding ----

inline Json encode(const GaussianRational& z) { return Json::array({to_string(z.re()), to_string(z.im())}); }

inline Json encode(const Vec& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(encode(z));
  return out;
}

inline Json encode(const Mat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json encode(const NestSpec& s) { return Json{{"blocks", s.blocks()}}; }

inline Json encode(const LinMap& m) {
  Json values = Json::array();
  for (const auto& v : m.values()) values.push_back(encode(v));
  return Json{{"nest", encode(m.spec())}, {"values", std::move(values)}};
}

inline Json encode(const MapSpace& s) {
  Json basis = Json::array();
  for (const auto& m : s.basis_maps()) basis.push_back(encode(m));
  return Json{{"kind", to_string(s.kind())}, {"dim", s.dim()}, {"basis", std::move(basis)}};
}

inline Json encode_unit(const MatrixUnit& u) { return Json::array({u.row + 1, u.col + 1}); }

inline Json encode_scalars(const std::vector<GaussianRational>& v) { return encode(Vec(v.begin(), v.end())); }

inline Json encode(const Witness& w) {
  if (const auto* g = std::get_if<GenericWitness>(&w))
    return Json{{"derivation_coords", encode(g->derivation_coords)}, {"central_coords", encode(g->central_coords)}};
  if (const auto* a = std::get_if<Dim1Witness>(&w))
    return Json{{"f0", encode(a->f0)}, {"x0", encode(a->x0)}, {"P", encode(a->P)},  {"Q", encode(a->Q)},
                {"T", encode(a->T)},   {"H11", encode_scalars(a->h11)}, {"H22", encode_scalars(a->h22)}};
  const auto& b = std::get<GeneralWitness>(w);
  return Json{{"f", encode(b.f)}, {"y", encode(b.y)}, {"Phi", encode(b.phi)}, {"h_table", encode_scalars(b.h_table)}};
}

inline Json encode(const Certificate& c) {
  return Json{{"nest", encode(c.spec)}, {"n", c.n},         {"route", to_string(c.route)},
              {"L", encode(c.L)},       {"D", encode(c.D)}, {"H", encode(c.H)},
              {"witness", encode(c.witness)}, {"verified", c.verified}};
}

inline Json encode(const TheoremViolation& v) {
  Json units = Json::array();
  for (const auto& u : v.units) units.push_back(encode_unit(u));
  Json out{{"identity", v.identity}};
  out[v.identity == "leibniz" ? "unit_pair" : "tuple"] = std::move(units);
  out["lhs"] = encode(v.lhs);
  out["rhs"] = encode(v.rhs);
  return out;
}

inline Json encode(const ConditionReport& r) {
  Json out = Json::object();
  for (std::size_t i = 0; i < r.spade.size(); ++i) out["spade" + std::to_string(i + 1)] = to_string(r.spade[i]);
  out["seed"] = r.seed;
  return out;
}

// ---- decoding ----

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Rational decode_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SchemaError("rational must be a string \"p/q\" or an integer");
}

inline GaussianRational decode_scalar(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw SchemaError("complex entry must be [re, im]");
    return {decode_rational(j[0]), decode_rational(j[1])};
  }
  return GaussianRational(decode_rational(j));
}

inline Vec decode_vector(const Json& j) {
  if (!j.is_array()) throw SchemaError("vector must be an array");
  Vec v;
  for (const auto& e : j) v.push_back(decode_scalar(e));
  return v;
}

inline Mat decode_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  Vec entries;
  for (const auto& row : j) {
    const Vec r = decode_vector(row);
    if (cols == 0) cols = r.size();
    if (r.size() != cols || cols == 0) throw SchemaError("matrix rows must have equal nonzero length");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Mat(rows, cols, std::move(entries));
}

inline NestSpec decode_nest(const Json& j) {
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array()) throw SchemaError("blocks must be an array");
  std::vector<std::size_t> out;
  for (const auto& b : blocks) {
    if (!b.is_number_integer() || b.get<long long>() < 1) throw SchemaError("nest blocks must be positive integers");
    out.push_back(b.get<std::size_t>());
  }
  return NestSpec(std::move(out));
}

inline LinMap decode_linmap(const Json& j) {
  const NestSpec spec = decode_nest(field(j, "nest"));
  const Json& values = field(j, "values");
  if (!values.is_array()) throw SchemaError("values must be an array");
  std::vector<Mat> vs;
  for (const auto& v : values) vs.push_back(decode_matrix(v));
  try {
    return LinMap(AlgBasis(spec), std::move(vs));
  } catch (const DimensionMismatch& e) {
    throw SchemaError(e.what());
  }
}

inline Route decode_route(const std::string& s) {
  if (s == "GENERIC" || s == "generic") return Route::Generic;
  if (s == "DIM1" || s == "dim1") return Route::Dim1;
  if (s == "GENERAL" || s == "general") return Route::General;
  throw SchemaError("unknown route '" + s + "'");
}

inline std::vector<GaussianRational> decode_scalars(const Json& j) { return decode_vector(j); }

inline Witness decode_witness(Route route, const Json& j) {
  switch (route) {
    case Route::Generic:
      return GenericWitness{decode_vector(field(j, "derivation_coords")), decode_vector(field(j, "central_coords"))};
    case Route::Dim1:
      return Dim1Witness{decode_vector(field(j, "f0")),  decode_vector(field(j, "x0")),
                         decode_matrix(field(j, "P")),   decode_matrix(field(j, "Q")),
                         decode_matrix(field(j, "T")),   decode_scalars(field(j, "H11")),
                         decode_scalars(field(j, "H22"))};
    case Route::General:
      return GeneralWitness{decode_vector(field(j, "f")), decode_vector(field(j, "y")), decode_matrix(field(j, "Phi")),
                            decode_scalars(field(j, "h_table"))};
  }
  throw SchemaError("unknown route");
}

inline Certificate decode_certificate(const Json& j) {
  Certificate c;
  c.spec = decode_nest(field(j, "nest"));
  const Json& n = field(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 2) throw SchemaError("n must be an integer >= 2");
  c.n = n.get<std::size_t>();
  const Json& route = field(j, "route");
  if (!route.is_string()) throw SchemaError("route must be a string");
  c.route = decode_route(route.get<std::string>());
  c.L = decode_linmap(field(j, "L"));
  c.D = decode_linmap(field(j, "D"));
  c.H = decode_linmap(field(j, "H"));
  for (const auto* m : {&c.L, &c.D, &c.H})
    if (m->spec() != c.spec) throw SchemaError("certificate maps live on a different nest");
  c.witness = decode_witness(c.route, field(j, "witness"));
  const Json& verified = field(j, "verified");
  if (!verified.is_boolean()) throw SchemaError("verified must be a boolean");
  c.verified = verified.get<bool>();
  return c;
}

inline SubalgebraSpec decode_subalgebra(const Json& j) {
  NestSpec spec = decode_nest(field(j, "nest"));
  const Json& span = field(j, "span");
  if (!span.is_array()) throw SchemaError("span must be an array of matrices");
  std::vector<Mat> gens;
  for (const auto& m : span) gens.push_back(decode_matrix(m));
  return SubalgebraSpec(std::move(spec), gens);
}

/// Parses text, turning JSON syntax errors into SchemaError.
inline Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace nestlie::io
