#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "koszul/exact_linalg.hpp"

namespace koszul {

struct Coord {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Order-3 tensor in A (x) B (x) C with sparse coordinate storage. Zero values
// are never stored.
class Tensor3 {
 public:
  Tensor3(std::size_t dim_a, std::size_t dim_b, std::size_t dim_c);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t dim_c() const { return dim_c_; }

  void set(std::size_t i, std::size_t j, std::size_t k, const Rational& value);
  void add(std::size_t i, std::size_t j, std::size_t k, const Rational& value);
  Rational at(std::size_t i, std::size_t j, std::size_t k) const;

  const std::map<Coord, Rational>& entries() const { return entries_; }
  std::size_t nonzero_count() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  void check(std::size_t i, std::size_t j, std::size_t k) const;

  std::size_t dim_a_;
  std::size_t dim_b_;
  std::size_t dim_c_;
  std::map<Coord, Rational> entries_;
};

struct RankOneTerm {
  Vector a;
  Vector b;
  Vector c;
};

// X_0, ..., X_{2p}: the raw contractions T(alpha^i). Signs of the expansion
// T = sum (-1)^i a_i (x) X_i are applied by the flattening, not stored here.
class SliceFamily {
 public:
  SliceFamily(int p, std::vector<Matrix> slices);

  int p() const { return p_; }
  std::size_t rows() const { return slices_.front().rows(); }
  std::size_t cols() const { return slices_.front().cols(); }
  std::size_t size() const { return slices_.size(); }
  const Matrix& operator[](std::size_t k) const { return slices_.at(k); }
  const std::vector<Matrix>& slices() const { return slices_; }

 private:
  int p_;
  std::vector<Matrix> slices_;
};

// M_{n,l,m}: unit entries at ((i,j),(j,k),(i,k)), pairs flattened row-major.
Tensor3 matmul_tensor(std::size_t n, std::size_t l, std::size_t m);

// (j,k) -> sum_i alpha_i T(i,j,k)
Matrix contract_a(const Tensor3& t, std::span<const Rational> alpha);

// dim_a x (dim_b * dim_c) unfolding, column index j * dim_c + k.
Matrix unfold_a(const Tensor3& t);

SliceFamily slice_family(const Tensor3& t, std::span<const Vector> alphas);

bool verify_decomposition(const Tensor3& t, std::span<const RankOneTerm> terms);

std::size_t left_kernel_dim(const Tensor3& t);

// Action of an n x n endomorphism on N (x) M: alpha (x) Id_m, so the rank is
// m * rank(alpha) and commutators lift to commutators.
Matrix lift_endomorphism(const Matrix& alpha, std::size_t m);

// Row-major coordinates of a matrix as a vector (used for A-covectors of
// matrix multiplication tensors).
Vector flatten_matrix(const Matrix& m);

}  // namespace koszul
