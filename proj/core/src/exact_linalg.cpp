#include "koszul/exact_linalg.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <utility>

#include "koszul/error.hpp"

namespace koszul {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw InputError(std::string(what) + ": matrix is not square");
}

// Integer image of a rational matrix: every row is multiplied by the lcm of
// its denominators. det(m) == det(result) / scale.
using IntGrid = std::vector<std::vector<mpz_class>>;

IntGrid clear_denominators(const Matrix& m, mpz_class& scale) {
  IntGrid grid(m.rows(), std::vector<mpz_class>(m.cols()));
  scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class lcm = 1;
    for (const auto& v : m.row(r)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& v = m(r, c);
      grid[r][c] = v.get_num() * (lcm / v.get_den());
    }
    scale *= lcm;
  }
  return grid;
}

std::size_t bit_size(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Row index in [from, rows) whose entry in column c is nonzero and has the
// fewest bits; rows() if the column is zero there.
std::size_t choose_pivot(const IntGrid& a, std::size_t from, std::size_t c) {
  std::size_t best = a.size();
  std::size_t best_bits = 0;
  for (std::size_t r = from; r < a.size(); ++r) {
    const std::size_t bits = bit_size(a[r][c]);
    if (bits == 0) continue;
    if (best == a.size() || bits < best_bits) {
      best = r;
      best_bits = bits;
    }
  }
  return best;
}

struct EchelonState {
  std::size_t rank = 0;
  int sign = 1;
  bool full_column_rank_prefix = true;  // every column so far produced a pivot
};

// Fraction-free echelon form. Entries below/right of the pivots are minors of
// the original matrix, so every division is exact. When stop_at_gap is set the
// routine returns at the first column without a pivot (enough for det).
EchelonState bareiss_echelon(IntGrid& a, std::size_t cols, bool stop_at_gap) {
  EchelonState st;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t c = 0; c < cols && st.rank < a.size(); ++c) {
    const std::size_t piv = choose_pivot(a, st.rank, c);
    if (piv == a.size()) {
      st.full_column_rank_prefix = false;
      if (stop_at_gap) return st;
      continue;
    }
    const std::size_t r = st.rank;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      st.sign = -st.sign;
    }
    const mpz_class& p = a[r][c];
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      const mpz_class f = a[i][c];
      if (sgn(f) == 0) {
        // a[i][j] = p * a[i][j] / prev
        if (prev != 1 || p != 1) {
          for (std::size_t j = c + 1; j < cols; ++j) {
            if (sgn(a[i][j]) == 0) continue;
            a[i][j] *= p;
            mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
          }
        }
        continue;
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        tmp = p * a[i][j];
        tmp -= f * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = p;
    ++st.rank;
  }
  return st;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw InputError("malformed rational literal \"" + std::string(text) + "\"");
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (sgn(d) == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols, std::vector<Rational> entries) {
  if (entries.size() != rows * cols) throw InputError("entry count does not match rows*cols");
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.entries_ = std::move(entries);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_) throw InputError("block out of range");
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(row0 + r, col0 + c);
  return out;
}

void Matrix::set_block(std::size_t row0, std::size_t col0, const Matrix& source) {
  if (row0 + source.rows() > rows_ || col0 + source.cols() > cols_) throw InputError("block out of range");
  for (std::size_t r = 0; r < source.rows(); ++r)
    for (std::size_t c = 0; c < source.cols(); ++c) (*this)(row0 + r, col0 + c) = source(r, c);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("incompatible shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("incompatible shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& scalar) {
  for (auto& v : entries_) v *= scalar;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator-(Matrix m) {
  m *= Rational(-1);
  return m;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw InputError("incompatible shapes");
  Matrix out(lhs.rows(), rhs.cols());
  Rational prod;
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Rational& a = lhs(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        const Rational& b = rhs(k, j);
        if (sgn(b) == 0) continue;
        prod = a * b;
        out(i, j) += prod;
      }
    }
  }
  return out;
}

Matrix operator*(const Rational& scalar, Matrix m) {
  m *= scalar;
  return m;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r == 0 ? "[" : ", [");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c == 0 ? "" : ", ") << m(r, c);
    os << ']';
  }
  return os << ']';
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

Matrix kronecker(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      if (sgn(lhs(i, j)) == 0) continue;
      for (std::size_t k = 0; k < rhs.rows(); ++k)
        for (std::size_t l = 0; l < rhs.cols(); ++l)
          out(i * rhs.rows() + k, j * rhs.cols() + l) = lhs(i, j) * rhs(k, l);
    }
  return out;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw InputError("incompatible shapes");
  Matrix out(left.rows(), left.cols() + right.cols());
  out.set_block(0, 0, left);
  out.set_block(0, left.cols(), right);
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw InputError("incompatible shapes");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

Matrix assemble_2x2(const Matrix& top_left, const Matrix& top_right,
                    const Matrix& bottom_left, const Matrix& bottom_right) {
  return vstack(hstack(top_left, top_right), hstack(bottom_left, bottom_right));
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) throw InputError("incompatible shapes");
  return x * y - y * x;
}

Rational det_exact(const Matrix& m) {
  require_square(m, "det_exact");
  if (m.rows() == 0) return 1;
  mpz_class scale;
  IntGrid a = clear_denominators(m, scale);
  const EchelonState st = bareiss_echelon(a, m.cols(), /*stop_at_gap=*/true);
  if (st.rank < m.rows()) return 0;
  Rational det(a.back().back() * st.sign, scale);
  det.canonicalize();
  return det;
}

std::size_t rank_exact(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  mpz_class scale;
  IntGrid a = clear_denominators(m, scale);
  return bareiss_echelon(a, m.cols(), /*stop_at_gap=*/false).rank;
}

Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (sgn(a(r, c)) != 0) {
        piv = r;
        break;
      }
    if (piv == n) throw DegenerateError("matrix is singular");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    const Rational scale = 1 / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a(r, c)) == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(a(c, j)) != 0) a(r, j) -= f * a(c, j);
        if (sgn(inv(c, j)) != 0) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Rational schur_block_det(const Matrix& x, const Matrix& y, const Matrix& z, const Matrix& w) {
  const std::size_t n = x.rows();
  const std::size_t m = w.rows();
  if (!x.is_square() || !w.is_square() || y.rows() != n || y.cols() != m || z.rows() != m || z.cols() != n)
    throw InputError("incompatible shapes");
  const Rational det_x = det_exact(x);
  if (sgn(det_x) == 0) throw DegenerateError("Schur pivot singular");
  return det_x * det_exact(w - z * inverse(x) * y);
}

Rational det_rank_update(const Matrix& a, const Matrix& u, const Matrix& v) {
  if (!a.is_square() || u.rows() != a.rows() || v.rows() != a.rows() || u.cols() != v.cols())
    throw InputError("incompatible shapes");
  const Rational det_a = det_exact(a);
  if (sgn(det_a) == 0) throw DegenerateError("rank-update base matrix singular");
  return det_a * det_exact(Matrix::identity(u.cols()) + transpose(v) * inverse(a) * u);
}

}  // namespace koszul
