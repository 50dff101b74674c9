#include "pdmodel/algebra_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pdmodel/errors.hpp"

namespace pdmodel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

long as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<long>();
}

std::size_t as_index(const json& v, std::size_t bound, const std::string& where) {
  long i = as_int(v, where);
  if (i < 0 || static_cast<std::size_t>(i) >= bound)
    fail(where, "index " + std::to_string(i) + " out of range 0.." + std::to_string(static_cast<long>(bound) - 1));
  return static_cast<std::size_t>(i);
}

Scalar as_scalar(const json& v, const Field& f, const std::string& where) {
  std::string text;
  if (v.is_string())
    text = v.get<std::string>();
  else if (v.is_number_integer())
    text = std::to_string(v.get<long>());
  else
    fail(where, "expected a scalar string such as \"3\" or \"-1/2\"");
  try {
    return Scalar::parse(text, f);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

// [[index, "scalar"], ...] into a dense vector of length dim.
Vector as_sparse(const json& v, std::size_t dim, const Field& f, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of [index, scalar] pairs");
  Vector out = zero_vector(dim, f);
  std::set<std::size_t> seen;
  for (std::size_t t = 0; t < v.size(); ++t) {
    std::string w = where + "[" + std::to_string(t) + "]";
    const json& pair = v[t];
    if (!pair.is_array() || pair.size() != 2) fail(w, "expected [index, scalar]");
    std::size_t idx = as_index(pair[0], dim, w + "[0]");
    if (!seen.insert(idx).second) fail(w, "index " + std::to_string(idx) + " repeated");
    out[idx] = as_scalar(pair[1], f, w + "[1]");
  }
  return out;
}

ordered_json sparse_json(std::span<const Scalar> v) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back(ordered_json::array({i, v[i].to_string()}));
  return out;
}

}  // namespace

Field parse_field(const std::string& text) {
  if (text == "Q" || text == "QQ") return Field::rationals();
  std::string digits = text.rfind("F_", 0) == 0 ? text.substr(2) : text;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
    throw ParseError("field: expected \"Q\" or a prime, got \"" + text + "\"");
  unsigned long p = std::stoul(digits);
  if (!is_prime(p)) throw ParseError("field: " + digits + " is not prime");
  return Field::prime(static_cast<std::uint32_t>(p));
}

AlgebraDocument parse_algebra(const std::string& text, const std::optional<Field>& field) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected an object");

  Field f = Field::rationals();
  if (field) {
    f = *field;
  } else {
    const json& fj = member(doc, "field", "document");
    if (fj.is_string())
      f = parse_field(fj.get<std::string>());
    else if (fj.is_object())
      f = parse_field(std::to_string(as_int(member(fj, "p", "field"), "field.p")));
    else
      fail("field", "expected \"Q\" or {\"p\": prime}");
  }

  AlgebraDocument out;
  out.n = static_cast<int>(as_int(member(doc, "n", "document"), "n"));
  if (out.n < 0) fail("n", "must be non-negative");

  const json& basis = member(doc, "basis", "document");
  if (!basis.is_array() || basis.empty()) fail("basis", "expected a non-empty array of name lists");
  const int top = static_cast<int>(basis.size()) - 1;
  CdgaBuilder b(f, top);
  for (int deg = 0; deg <= top; ++deg) {
    std::string w = "basis[" + std::to_string(deg) + "]";
    const json& names = basis[static_cast<std::size_t>(deg)];
    if (!names.is_array()) fail(w, "expected an array of names");
    std::vector<std::string> list;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!names[i].is_string()) fail(w + "[" + std::to_string(i) + "]", "expected a string");
      list.push_back(names[i].get<std::string>());
    }
    if (deg == 0) {
      if (list != std::vector<std::string>{"1"}) fail(w, "degree 0 must be exactly [\"1\"]");
      continue;
    }
    b.set_basis(deg, std::move(list));
  }

  if (doc.contains("d")) {
    const json& ds = doc["d"];
    if (!ds.is_array()) fail("d", "expected an array");
    std::set<std::pair<int, std::size_t>> seen;
    for (std::size_t t = 0; t < ds.size(); ++t) {
      std::string w = "d[" + std::to_string(t) + "]";
      int deg = static_cast<int>(as_int(member(ds[t], "deg", w), w + ".deg"));
      if (deg < 0 || deg >= top) fail(w + ".deg", "no stored degree " + std::to_string(deg + 1) + " to map into");
      std::size_t from = as_index(member(ds[t], "from", w), b.dim(deg), w + ".from");
      if (!seen.insert({deg, from}).second) fail(w, "differential of this basis element given twice");
      b.set_d(deg, from, as_sparse(member(ds[t], "to", w), b.dim(deg + 1), f, w + ".to"));
    }
  }

  if (doc.contains("mul")) {
    const json& ms = doc["mul"];
    if (!ms.is_array()) fail("mul", "expected an array");
    std::set<std::tuple<int, std::size_t, int, std::size_t>> seen;
    for (std::size_t t = 0; t < ms.size(); ++t) {
      std::string w = "mul[" + std::to_string(t) + "]";
      const json& e = ms[t];
      int i = static_cast<int>(as_int(member(e, "deg_a", w), w + ".deg_a"));
      int j = static_cast<int>(as_int(member(e, "deg_b", w), w + ".deg_b"));
      if (i < 0 || j < 0 || i > top || j > top) fail(w, "degree outside the stored range");
      if (i > j) fail(w, "products are given with deg_a <= deg_b");
      std::size_t x = as_index(member(e, "a", w), b.dim(i), w + ".a");
      std::size_t y = as_index(member(e, "b", w), b.dim(j), w + ".b");
      if (i == j && x > y) fail(w, "equal-degree products are given with a <= b");
      if (!seen.insert({i, x, j, y}).second) fail(w, "product given twice");
      if (i + j > top) {
        as_sparse(member(e, "value", w), 0, f, w + ".value");  // must be empty above the stored range
        continue;
      }
      b.set_product(i, x, j, y, as_sparse(member(e, "value", w), b.dim(i + j), f, w + ".value"));
    }
  }
  out.algebra = b.build_shared();

  if (doc.contains("orientation") && !doc["orientation"].is_null()) {
    if (out.n > top) fail("orientation", "n lies above the stored range");
    out.orientation = Orientation{out.n, as_sparse(doc["orientation"], out.algebra->dim(out.n), f, "orientation")};
  }
  return out;
}

AlgebraDocument read_algebra_file(const std::string& path, const std::optional<Field>& field) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_algebra(ss.str(), field);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string print_algebra(const AlgebraDocument& doc) {
  const Cdga& a = *doc.algebra;
  const Field& f = a.field();
  ordered_json out;
  if (f.is_rational())
    out["field"] = "Q";
  else
    out["field"] = ordered_json{{"p", f.characteristic()}};
  out["n"] = doc.n;

  ordered_json basis = ordered_json::array();
  for (int deg = 0; deg <= a.top(); ++deg) basis.push_back(deg == 0 ? std::vector<std::string>{"1"} : a.names(deg));
  out["basis"] = basis;

  ordered_json ds = ordered_json::array();
  for (int deg = 0; deg < a.top(); ++deg) {
    Matrix t = a.d(deg).transpose();
    for (std::size_t c = 0; c < a.dim(deg); ++c)
      if (!is_zero(t.row(c))) ds.push_back(ordered_json{{"deg", deg}, {"from", c}, {"to", sparse_json(t.row(c))}});
  }
  out["d"] = ds;

  ordered_json ms = ordered_json::array();
  // unit products are implicit; only deviations from 1 * e = e are written
  for (int j = 0; j <= a.top(); ++j)
    for (std::size_t y = 0; y < a.dim(j); ++y) {
      Vector dense = zero_vector(a.dim(j), f);
      for (const auto& [k, c] : a.stored_product(0, 0, j, y)) dense[k] += c;
      if (dense == unit_vector(a.dim(j), y, f)) continue;
      ms.push_back(ordered_json{{"deg_a", 0}, {"a", 0}, {"deg_b", j}, {"b", y}, {"value", sparse_json(dense)}});
    }
  for (int i = 1; 2 * i <= a.top(); ++i)
    for (int j = i; i + j <= a.top(); ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = i == j ? x : 0; y < a.dim(j); ++y) {
          const SparseVec& v = a.stored_product(i, x, j, y);
          Vector dense = zero_vector(a.dim(i + j), f);
          for (const auto& [k, c] : v) dense[k] += c;
          if (is_zero(dense)) continue;
          ms.push_back(ordered_json{{"deg_a", i}, {"a", x}, {"deg_b", j}, {"b", y}, {"value", sparse_json(dense)}});
        }
  out["mul"] = ms;
  if (doc.orientation) out["orientation"] = sparse_json(doc.orientation->eps);
  return out.dump(1) + "\n";
}

}  // namespace pdmodel
