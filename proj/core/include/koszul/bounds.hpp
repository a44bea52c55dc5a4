#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/exact_linalg.hpp"
#include "koszul/tensor.hpp"

namespace koszul {

struct BoundKind {
  enum class Tag { strassen, blaser, landsberg, mr, mr_p2_refined, mr_p3_refined };

  Tag tag = Tag::strassen;
  int p = 0;  // only for landsberg and mr

  static BoundKind strassen() { return {Tag::strassen, 0}; }
  static BoundKind blaser() { return {Tag::blaser, 0}; }
  static BoundKind landsberg(int p);
  static BoundKind mr(int p);
  static BoundKind mr_p2_refined() { return {Tag::mr_p2_refined, 0}; }
  static BoundKind mr_p3_refined() { return {Tag::mr_p3_refined, 0}; }

  // "strassen", "blaser", "landsberg:P", "mr:P", "mr_p2_refined", "mr_p3_refined"
  static BoundKind parse(std::string_view text);
  std::string name() const;
  bool parametric() const { return tag == Tag::landsberg || tag == Tag::mr; }
  bool allows_rectangular() const { return tag == Tag::mr; }

  friend bool operator==(const BoundKind&, const BoundKind&) = default;
};

struct BoundReport {
  BoundKind kind;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  Rational value;
  mpz_class ceiling;
  bool vacuous() const { return sgn(value) <= 0; }
};

// 2 binom(2p,p+1) - binom(2p-2,p-1) + 2
mpz_class mr_linear_coefficient(int p);

BoundReport bound_value(const BoundKind& kind, std::uint64_t n, std::uint64_t m);
BoundReport bound_value(const BoundKind& kind, std::uint64_t n);

struct BestMr {
  int p = 1;
  BoundReport report;
};

// Maximizes the ceiling of the square mr(p) bound over 1 <= p <= n; ties go to
// the smallest p.
BestMr best_mr(std::uint64_t n);

struct CrossoverResult {
  std::optional<std::uint64_t> first_geq;
  std::optional<std::uint64_t> first_strict;
  std::optional<std::uint64_t> ceiling_first_geq;
  std::optional<std::uint64_t> ceiling_first_strict;
  // value(a) - value(b) is nondecreasing from first_geq up to n_max.
  bool monotone_after = false;
};

CrossoverResult crossover(const BoundKind& a, const BoundKind& b, std::uint64_t n_max);

struct CertifyOptions {
  int p = 1;
  std::vector<Vector> alphas;  // used as the only trial when non-empty
  std::uint64_t seed = 0;
  std::size_t trials = 3;
  std::int64_t entry_bound = 9;
};

struct Certificate {
  std::uint64_t bound = 0;
  std::size_t flattening_rank = 0;
  std::uint64_t divisor = 1;  // binom(2p, p)
  std::uint64_t seed = 0;
  int p = 1;
  std::size_t trials = 0;
  std::size_t best_trial = 0;
  std::vector<Vector> alphas;
};

// ceil(rank(flattening) / binom(2p,p)), maximized over trials. Throws
// DegenerateError when 2p+1 > dim A or every trial picks dependent covectors.
Certificate certify_border_rank(const Tensor3& t, const CertifyOptions& options);

}  // namespace koszul
