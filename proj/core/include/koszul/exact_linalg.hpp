#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

// Exact scalar. gmpxx keeps values canonical (lowest terms, positive
// denominator) as long as every constructed value is canonicalized, which
// parse_rational does.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_entries(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<const Rational> entries() const { return entries_; }

  bool is_zero() const;
  bool is_identity() const;

  Matrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& source);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(const Rational& scalar);

  friend bool operator==(const Matrix& lhs, const Matrix& rhs) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(const Rational& scalar, Matrix m);
std::ostream& operator<<(std::ostream& os, const Matrix& m);

Matrix transpose(const Matrix& m);
Matrix kronecker(const Matrix& lhs, const Matrix& rhs);
Matrix hstack(const Matrix& left, const Matrix& right);
Matrix vstack(const Matrix& top, const Matrix& bottom);
// [[top_left, top_right], [bottom_left, bottom_right]]
Matrix assemble_2x2(const Matrix& top_left, const Matrix& top_right,
                    const Matrix& bottom_left, const Matrix& bottom_right);

/// XY - YX. Throws InputError("incompatible shapes") unless both are square of
/// the same size.
Matrix commutator(const Matrix& x, const Matrix& y);

/// Exact determinant by fraction-free (Bareiss) elimination.
Rational det_exact(const Matrix& m);

/// Exact rank over Q; number of pivots of a fraction-free echelon form.
std::size_t rank_exact(const Matrix& m);

/// Exact inverse (Gauss-Jordan over Q). Throws DegenerateError if singular.
Matrix inverse(const Matrix& m);

/// det [[X, Y], [Z, W]] computed as det(X) * det(W - Z X^{-1} Y).
/// Throws DegenerateError("Schur pivot singular") when X is singular.
Rational schur_block_det(const Matrix& x, const Matrix& y, const Matrix& z, const Matrix& w);

/// det(A + U V^t) computed as det(A) * det(Id_m + V^t A^{-1} U).
Rational det_rank_update(const Matrix& a, const Matrix& u, const Matrix& v);

}  // namespace koszul
