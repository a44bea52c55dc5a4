#pragma once

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "koszul/exact_linalg.hpp"
#include "koszul/random.hpp"
#include "oracle.hpp"

namespace test_support {

inline std::string fixture_path(const std::string& name) { return std::string(KOSZUL_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  REQUIRE_MESSAGE(in.good(), "missing fixture " << name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline koszul::Matrix random_matrix(std::size_t rows, std::size_t cols, koszul::Rng& rng, long bound = 9) {
  koszul::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rng.uniform(-bound, bound));
  return m;
}

inline koszul::Matrix random_invertible(std::size_t n, koszul::Rng& rng, long bound = 9) {
  for (;;) {
    auto m = random_matrix(n, n, rng, bound);
    if (sgn(koszul::det_exact(m)) != 0) return m;
  }
}

inline oracle::Mat to_oracle(const koszul::Matrix& m) {
  oracle::Mat out = oracle::zeros(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  return out;
}

inline koszul::Matrix from_oracle(const oracle::Mat& m) {
  koszul::Matrix out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = m[r][c];
  return out;
}

inline koszul::Rational abs_value(const koszul::Rational& r) { return sgn(r) < 0 ? koszul::Rational(-r) : r; }

}  // namespace test_support
