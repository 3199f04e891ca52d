#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankone/oracle.hpp"

// JSON encodings. Exact scalars are {"re": "p/q", "im": "p/q"} (a bare "p/q"
// string is accepted on input as a real number); float scalars use JSON
// numbers in the same object shape.

namespace rankone::io {

using json = nlohmann::json;

template <class S>
struct codec;

template <>
struct codec<GaussScalar> {
  static json encode(const GaussScalar& z) { return {{"re", z.re().to_string()}, {"im", z.im().to_string()}}; }

  static GaussScalar decode(const json& j, const std::string& field) {
    auto rational = [&](const json& v, const std::string& f) {
      if (v.is_string()) {
        try {
          return Rational::parse(v.get<std::string>());
        } catch (const Error&) {
          throw ParseError(f, "expected \"p/q\", got " + v.dump());
        }
      }
      if (v.is_number_integer()) return Rational(v.get<long>());
      throw ParseError(f, "expected a \"p/q\" string, got " + v.dump());
    };
    if (j.is_object()) {
      if (!j.contains("re")) throw ParseError(field + ".re", "missing");
      Rational re = rational(j.at("re"), field + ".re");
      Rational im = j.contains("im") ? rational(j.at("im"), field + ".im") : Rational(0);
      return {re, im};
    }
    return GaussScalar(rational(j, field));
  }
};

template <>
struct codec<std::complex<double>> {
  static json encode(const std::complex<double>& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

  static std::complex<double> decode(const json& j, const std::string& field) {
    auto number = [&](const json& v, const std::string& f) {
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) return codec<GaussScalar>::decode(v, f).re().to_double();
      throw ParseError(f, "expected a number, got " + v.dump());
    };
    if (j.is_object()) {
      if (!j.contains("re")) throw ParseError(field + ".re", "missing");
      return {number(j.at("re"), field + ".re"), j.contains("im") ? number(j.at("im"), field + ".im") : 0.0};
    }
    return {number(j, field), 0.0};
  }
};

template <class S>
json encode_vector(const Vector<S>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(codec<S>::encode(x));
  return out;
}

template <class S>
Vector<S> decode_vector(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array");
  Vector<S> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(codec<S>::decode(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

template <class S>
json encode_matrix(const Matrix<S>& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(codec<S>::encode(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <class S>
Matrix<S> decode_matrix(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
  Matrix<S> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    const auto row = decode_vector<S>(j[i], f);
    if (row.size() != cols) throw ParseError(f, "ragged row: expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

template <class S>
json encode_poly(const BasicPoly<S>& p) {
  return encode_vector<S>(p.coefficients());
}

template <class S>
BasicPoly<S> decode_poly(const json& j, const std::string& field) {
  return BasicPoly<S>(decode_vector<S>(j, field));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
  out << text;
}

// ---- problem files ----

inline int decode_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer, got " + j.dump());
  return j.get<int>();
}

inline json encode_problem(const PerturbationProblem& p) {
  json blocks = json::array();
  for (const auto& b : p.spec.blocks)
    blocks.push_back({{"eigenvalue", codec<GaussScalar>::encode(b.eigenvalue)}, {"size", b.size}});
  json out = {{"blocks", blocks},
              {"b", encode_vector(p.b)},
              {"source", {{"block", p.source.block_index}, {"rank", p.source.rank}}}};
  if (p.spec.similarity) out["similarity"] = encode_matrix(*p.spec.similarity);
  return out;
}

/// Parses and validates a problem; any defect is a ParseError naming the field.
inline PerturbationProblem decode_problem(const json& j) {
  if (!j.is_object()) throw ParseError("(root)", "expected an object");
  PerturbationProblem p;
  if (!j.contains("blocks")) throw ParseError("blocks", "missing");
  const auto& blocks = j.at("blocks");
  if (!blocks.is_array()) throw ParseError("blocks", "expected an array");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string f = "blocks[" + std::to_string(i) + "]";
    const auto& b = blocks[i];
    if (!b.is_object()) throw ParseError(f, "expected an object");
    if (!b.contains("eigenvalue")) throw ParseError(f + ".eigenvalue", "missing");
    if (!b.contains("size")) throw ParseError(f + ".size", "missing");
    p.spec.blocks.push_back({codec<GaussScalar>::decode(b.at("eigenvalue"), f + ".eigenvalue"),
                             decode_int(b.at("size"), f + ".size")});
  }
  if (j.contains("similarity") && !j.at("similarity").is_null())
    p.spec.similarity = decode_matrix<GaussScalar>(j.at("similarity"), "similarity");
  if (!j.contains("b")) throw ParseError("b", "missing");
  p.b = decode_vector<GaussScalar>(j.at("b"), "b");
  if (!j.contains("source") || !j.at("source").is_object()) throw ParseError("source", "missing or not an object");
  const auto& src = j.at("source");
  if (!src.contains("block")) throw ParseError("source.block", "missing");
  if (!src.contains("rank")) throw ParseError("source.rank", "missing");
  const int block = decode_int(src.at("block"), "source.block");
  if (block < 0) throw ParseError("source.block", "must be >= 0");
  p.source = {static_cast<std::size_t>(block), decode_int(src.at("rank"), "source.rank")};
  const auto diags = validate_problem(p);
  if (!diags.empty()) throw ParseError(diags.front().field, diags.front().message);
  return p;
}

// ---- oracle values ----

inline json encode_root(const Root& r) {
  if (r.exact) return {{"value", codec<GaussScalar>::encode(*r.exact)}, {"multiplicity", r.multiplicity}, {"exact", true}};
  return {{"value", codec<std::complex<double>>::encode(r.value)}, {"multiplicity", r.multiplicity}, {"exact", false}};
}

inline Root decode_root(const json& j, const std::string& field) {
  Root r;
  r.multiplicity = decode_int(j.at("multiplicity"), field + ".multiplicity");
  if (j.value("exact", false)) {
    r.exact = codec<GaussScalar>::decode(j.at("value"), field + ".value");
    r.value = r.exact->to_complex();
  } else {
    r.value = codec<std::complex<double>>::decode(j.at("value"), field + ".value");
  }
  return r;
}

inline json encode_jordan(const JordanStructure& js) {
  json out = json::array();
  for (const auto& e : js.entries)
    out.push_back({{"eigenvalue", codec<GaussScalar>::encode(e.eigenvalue)}, {"block_sizes", e.block_sizes}});
  return out;
}

inline JordanStructure decode_jordan(const json& j, const std::string& field) {
  JordanStructure js;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    js.entries.push_back({codec<GaussScalar>::decode(j[i].at("eigenvalue"), f + ".eigenvalue"),
                          j[i].at("block_sizes").get<std::vector<int>>()});
  }
  return js;
}

inline json encode_verdict(const ChainVerdict& v) {
  return {{"pass", v.pass}, {"failing_index", v.failing_index}, {"reason", v.reason}};
}

inline ChainVerdict decode_verdict(const json& j) {
  return {j.at("pass").get<bool>(), j.at("failing_index").get<int>(), j.at("reason").get<std::string>()};
}

}  // namespace rankone::io
