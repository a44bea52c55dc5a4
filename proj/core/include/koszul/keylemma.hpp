#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koszul/exact_linalg.hpp"
#include "koszul/random.hpp"
#include "koszul/tensor.hpp"

namespace koszul {

struct PolynomialEvaluator {
  std::size_t arity = 0;
  std::size_t degree_bound = 0;
  std::function<Rational(std::span<const Rational>)> eval;
  // Coordinate -> support group. Empty means every coordinate is its own
  // group. Zeroing a group zeroes all of its coordinates at once.
  std::vector<std::size_t> group_of;

  std::size_t group_count() const;
};

struct SearchOptions {
  std::size_t initial_budget = 8;  // random full-support samples before giving up
  std::size_t retries = 2;         // samples per tentative group removal
};

struct SupportResult {
  std::vector<std::size_t> support;  // sorted group ids
  Vector point;                      // coordinates outside the support are zero
  Rational value;                    // eval(point), nonzero
};

// Greedy elimination: drop one group at a time and keep the drop while random
// evaluations stay nonzero. The surviving set is minimal, so every monomial of
// the restriction touches all of it and its size is at most the degree.
SupportResult support_restriction_search(const PolynomialEvaluator& poly, Rng rng,
                                         const SearchOptions& options = {});

// Half-width of the sampling box for a polynomial of the given degree bound.
std::int64_t sampling_range(std::size_t degree_bound);

// n^2 - n (2 binom(2p,p+1) - binom(2p-2,p-1) + 2)
std::int64_t h_value(std::int64_t n, int p);

struct NonvanishingResult {
  bool nonzero = false;
  std::size_t trials_used = 0;
  std::optional<SliceFamily> witness;
  Rational det;
};

// Random traceless integer X_1..X_2p with X_0 = Id; first trial with
// det(qqbar) != 0 wins.
NonvanishingResult generic_nonvanishing(std::size_t n, int p, std::uint64_t seed, std::size_t trials);

// Degree of t -> P(x0 + t v) for random integer x0, v, from exact forward
// differences at degree_bound + 2 points. -1 for the zero polynomial. Throws
// DegenerateError when the evaluations are not a polynomial within the bound.
int degree_along_line(const PolynomialEvaluator& poly, Rng rng);

// E_00, E_01, ..., row-major.
std::vector<Matrix> elementary_basis(std::size_t n);

struct KeyLemmaWitness {
  std::size_t n = 0;
  int p = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  std::array<std::vector<std::size_t>, 4> subsets;  // S0..S3 as basis indices
  std::vector<Matrix> alphas;                       // alpha^0..alpha^2p
  std::vector<std::size_t> complement;              // basis indices outside every S_i
  std::int64_t h = 0;                               // h_value(n, p)
  Rational qqbar_det;
};

struct WitnessCheck {
  bool independent = false;
  bool alpha0_invertible = false;
  bool qqbar_nonzero = false;
  bool subset_sizes = false;
  bool complement_size = false;
  bool ok() const { return independent && alpha0_invertible && qqbar_nonzero && subset_sizes && complement_size; }
};

struct KeyLemmaOptions {
  std::size_t attempts = 3;
  SearchOptions search;
};

// Stages: P0 = det(alpha^0); P1 = product of the distinct diagonal
// commutator determinants not involving X_1 or X_2p (for p = 1, det([Y, X_2])
// with a random auxiliary Y); P2 = det([X_1, X_2]); P3 = det(Z - Y L^{-1} W)
// in X_2p. Each stage fixes its sampled witness point. p in {1, 2, 3}.
KeyLemmaWitness key_lemma_search(std::size_t n, int p, const std::vector<Matrix>& basis, std::uint64_t seed,
                                 const KeyLemmaOptions& options = {});

WitnessCheck validate_witness(const KeyLemmaWitness& witness, const std::vector<Matrix>& basis);

// Stage-P3 value at slices X_0..X_2p (X_0 is ignored, p >= 2): with M the
// qqbar matrix, A its block diagonal restricted to labels avoiding X_1, X_2p
// (identity elsewhere) and N = A^{-1} M = [[Y, Z], [L, W]] split after the
// last binom(2p-2,p-1) block rows and first binom(2p-2,p-1) block columns,
// the value is det(Z - Y L^{-1} W).
Rational stage3_schur_value(const std::vector<Matrix>& slices, int p);
// The same value as det(M) / (det(A) det(L)) with the block-swap sign.
Rational stage3_quotient_value(const std::vector<Matrix>& slices, int p);

// Block-skew 4x4 commutator matrix: block (i,j) = [X_{i+1}, X_{j+1}] for i < j.
Matrix skew_commutator_matrix(const SliceFamily& slices);

struct DegreeAudit {
  std::size_t n = 0;
  int degree_bound = 0;  // interpolation bound used
  int expected = 0;      // the claimed degree
  int measured = 0;      // -1 for an identically zero polynomial
};

// p = 2: X_1, X_2 fixed at random, degree of det(skew matrix) in the entries of
// X_3, X_4 (equal to the degree of det(Id + A^{-1} U) since det(A) is fixed).
DegreeAudit refined_p2_audit(std::size_t n, std::uint64_t seed);

// p = 3: degree of the stage-P1 polynomial in the entries of X_2..X_5.
DegreeAudit reduced_p1_audit_p3(std::size_t n, std::uint64_t seed);

}  // namespace koszul
