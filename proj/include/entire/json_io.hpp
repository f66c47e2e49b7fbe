#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "entire/certificate.hpp"
#include "entire/errors.hpp"
#include "entire/lattice.hpp"
#include "entire/laurent.hpp"
#include "entire/reduction.hpp"

// JSON forms. Exact numbers are strings ("3", "-1/2"); structural counts such
// as n, k and matrix shapes are plain JSON numbers. Lists are emitted in
// canonical order (ascending k, ascending lexicographic exponents) so output
// is byte-stable.

namespace entire::json_io {

using Json = nlohmann::ordered_json;

/// Thrown for documents that are valid JSON but not a valid payload.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json to_json(const GaussianRational& x) { return Json{{"re", to_string(x.re())}, {"im", to_string(x.im())}}; }

inline GaussianRational gaussian_from_json(const Json& j) {
  try {
    return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad Gaussian rational: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

inline Json to_json(const GaussianVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline GaussianVector gaussian_vector_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of Gaussian rationals");
  GaussianVector v;
  for (const auto& x : j) v.push_back(gaussian_from_json(x));
  return v;
}

inline Json to_json(const Exponent& e) {
  Json a = Json::array();
  for (const auto& x : e) a.push_back(x.str());
  return a;
}

inline Integer integer_from_json(const Json& j) {
  if (!j.is_string()) throw SchemaError("integers must be encoded as strings");
  auto s = j.get<std::string>();
  Rational r;
  try {
    r = parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  if (denominator(r) != 1 || s.find('/') != std::string::npos) throw SchemaError("expected an integer, got '" + s + "'");
  return numerator(r);
}

inline Exponent exponent_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an exponent array");
  Exponent e;
  for (const auto& x : j) e.push_back(integer_from_json(x));
  return e;
}

inline Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline IntMatrix matrix_from_json(const Json& j) {
  try {
    auto rows = j.at("rows").get<std::size_t>();
    auto cols = j.at("cols").get<std::size_t>();
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows) throw SchemaError("matrix row count mismatch");
    std::vector<Exponent> r;
    for (const auto& row : entries) r.push_back(exponent_from_json(row));
    return IntMatrix::from_rows(r, cols);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad matrix: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw SchemaError(std::string("bad matrix: ") + e.what());
  }
}

inline Json to_json(const LaurentPoly& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(Json{{"exponent", to_json(e)}, {"coeff", to_json(c)}});
  return Json{{"nvars", f.nvars()}, {"terms", terms}};
}

inline LaurentPoly poly_from_json(const Json& j) {
  try {
    LaurentPoly f(j.at("nvars").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
      Exponent e = exponent_from_json(t.at("exponent"));
      if (f.coefficient(e) != GaussianRational()) throw SchemaError("repeated exponent in polynomial");
      GaussianRational c = gaussian_from_json(t.at("coeff"));
      if (c.is_zero()) throw SchemaError("zero coefficient stored in polynomial");
      f.add_term(std::move(e), c);
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad polynomial: ") + e.what());
  } catch (const DimensionMismatch& e) {
    throw SchemaError(std::string("bad polynomial: ") + e.what());
  }
}

inline Json to_json(const Certificate& c) {
  Json a = Json::array(), u = Json::array(), theta = Json::array();
  for (const auto& [k, m] : c.A) a.push_back(Json{{"k", k}, {"matrix", to_json(m)}});
  for (const auto& [k, v] : c.u) u.push_back(Json{{"k", k}, {"vector", to_json(v)}});
  for (const auto& [k, t] : c.theta) theta.push_back(Json{{"k", k}, {"poly", to_json(t)}});
  return Json{{"n", c.n}, {"A", a}, {"u", u}, {"u0", to_json(c.u0)}, {"theta", theta}};
}

/// Shape problems are left for verify/expand to report; only structural
/// decoding errors throw here.
inline Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.n = j.at("n").get<std::size_t>();
    for (const auto& e : j.at("A")) {
      auto k = e.at("k").get<std::size_t>();
      if (!c.A.emplace(k, matrix_from_json(e.at("matrix"))).second) throw SchemaError("duplicate A entry");
    }
    for (const auto& e : j.at("u")) {
      auto k = e.at("k").get<std::size_t>();
      if (!c.u.emplace(k, gaussian_vector_from_json(e.at("vector"))).second) throw SchemaError("duplicate u entry");
    }
    c.u0 = gaussian_vector_from_json(j.at("u0"));
    for (const auto& e : j.at("theta")) {
      auto k = e.at("k").get<std::size_t>();
      if (!c.theta.emplace(k, poly_from_json(e.at("poly"))).second) throw SchemaError("duplicate theta entry");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad certificate: ") + e.what());
  }
}

inline Json to_json(const Witness& w) {
  Json chain = Json::array(), span = Json::array();
  for (const auto& m : w.chain) chain.push_back(to_json(m));
  for (const auto& e : w.spanning_exponents) span.push_back(to_json(e));
  return Json{{"chain", chain}, {"failing_level", w.failing_level}, {"spanning_exponents", span}};
}

inline Witness witness_from_json(const Json& j) {
  try {
    Witness w;
    for (const auto& m : j.at("chain")) w.chain.push_back(matrix_from_json(m));
    w.failing_level = j.at("failing_level").get<std::size_t>();
    for (const auto& e : j.at("spanning_exponents")) w.spanning_exponents.push_back(exponent_from_json(e));
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad witness: ") + e.what());
  }
}

/// FNV-1a, 64 bit, as 16 hex digits.
inline std::string input_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return "fnv1a64:" + out;
}

}  // namespace entire::json_io
