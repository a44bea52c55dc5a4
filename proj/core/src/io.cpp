#include "koszul/io.hpp"

#include <fstream>

#include "koszul/error.hpp"

namespace koszul {

namespace {

std::size_t count_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_unsigned())
    throw InputError(std::string("expected non-negative integer field '") + key + "'");
  return j.at(key).get<std::size_t>();
}

std::size_t index_value(const json& j) {
  if (!j.is_number_unsigned()) throw InputError("expected non-negative integer index");
  return j.get<std::size_t>();
}

}  // namespace

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<unsigned long long>()));
  throw InputError("expected a rational as a string \"p/q\" or an integer");
}

json rational_to_json(const Rational& r) { return to_string(r); }

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

json vector_to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(rational_to_json(e));
  return out;
}

Matrix matrix_from_json(const json& j) {
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  if (!j.contains("entries") || !j.at("entries").is_array() || j.at("entries").size() != rows)
    throw InputError("matrix 'entries' must be an array of " + std::to_string(rows) + " rows");
  std::vector<Rational> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j.at("entries")) {
    if (!row.is_array() || row.size() != cols)
      throw InputError("matrix row must have " + std::to_string(cols) + " entries");
    for (const auto& e : row) entries.push_back(rational_from_json(e));
  }
  return Matrix::from_entries(rows, cols, std::move(entries));
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Tensor3 tensor_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.at("dims").is_array() || j.at("dims").size() != 3)
    throw InputError("tensor needs 'dims': [a, b, c]");
  const auto& d = j.at("dims");
  Tensor3 t(index_value(d[0]), index_value(d[1]), index_value(d[2]));
  if (!j.contains("entries") || !j.at("entries").is_array()) throw InputError("tensor needs an 'entries' array");
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 4) throw InputError("tensor entry must be [i, j, k, \"p/q\"]");
    const std::size_t i = index_value(e[0]);
    const std::size_t jj = index_value(e[1]);
    const std::size_t k = index_value(e[2]);
    if (sgn(t.at(i, jj, k)) != 0) throw InputError("duplicate tensor coordinate");
    t.set(i, jj, k, rational_from_json(e[3]));
  }
  return t;
}

json tensor_to_json(const Tensor3& t) {
  json entries = json::array();
  for (const auto& [c, v] : t.entries()) entries.push_back({c.i, c.j, c.k, rational_to_json(v)});
  return {{"dims", {t.dim_a(), t.dim_b(), t.dim_c()}}, {"entries", entries}};
}

std::vector<RankOneTerm> decomposition_from_json(const json& j) {
  if (!j.is_array()) throw InputError("decomposition must be a JSON array of terms");
  std::vector<RankOneTerm> out;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("a") || !term.contains("b") || !term.contains("c"))
      throw InputError("decomposition term needs 'a', 'b' and 'c'");
    out.push_back({vector_from_json(term.at("a")), vector_from_json(term.at("b")), vector_from_json(term.at("c"))});
  }
  return out;
}

json decomposition_to_json(std::span<const RankOneTerm> terms) {
  json out = json::array();
  for (const auto& t : terms) out.push_back({{"a", vector_to_json(t.a)}, {"b", vector_to_json(t.b)}, {"c", vector_to_json(t.c)}});
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace koszul
