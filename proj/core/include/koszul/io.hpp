#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <span>
#include <vector>

#include "koszul/exact_linalg.hpp"
#include "koszul/tensor.hpp"

namespace koszul {

using json = nlohmann::json;

// Rationals are strings "p" or "p/q"; plain JSON integers are accepted on input.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

Vector vector_from_json(const json& j);
json vector_to_json(std::span<const Rational> v);

// {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}
Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);

// {"dims": [a, b, c], "entries": [[i, j, k, "p/q"], ...]}
Tensor3 tensor_from_json(const json& j);
json tensor_to_json(const Tensor3& t);

// [{"a": [...], "b": [...], "c": [...]}, ...]
std::vector<RankOneTerm> decomposition_from_json(const json& j);
json decomposition_to_json(std::span<const RankOneTerm> terms);

// Throws InputError when the file is missing or not valid JSON.
json read_json_file(const std::filesystem::path& path);

}  // namespace koszul
