#include "koszul/tensor.hpp"

#include <string>

#include "koszul/error.hpp"

namespace koszul {

Tensor3::Tensor3(std::size_t dim_a, std::size_t dim_b, std::size_t dim_c)
    : dim_a_(dim_a), dim_b_(dim_b), dim_c_(dim_c) {}

void Tensor3::check(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= dim_a_ || j >= dim_b_ || k >= dim_c_) throw InputError("tensor coordinate out of range");
}

void Tensor3::set(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  check(i, j, k);
  if (sgn(value) == 0)
    entries_.erase({i, j, k});
  else
    entries_[{i, j, k}] = value;
}

void Tensor3::add(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  set(i, j, k, at(i, j, k) + value);
}

Rational Tensor3::at(std::size_t i, std::size_t j, std::size_t k) const {
  check(i, j, k);
  const auto it = entries_.find({i, j, k});
  return it == entries_.end() ? Rational(0) : it->second;
}

SliceFamily::SliceFamily(int p, std::vector<Matrix> slices) : p_(p), slices_(std::move(slices)) {
  if (p < 1) throw InputError("slice family needs p >= 1");
  if (slices_.size() != static_cast<std::size_t>(2 * p + 1))
    throw InputError("slice family for p=" + std::to_string(p) + " needs " + std::to_string(2 * p + 1) + " slices");
  for (const auto& s : slices_)
    if (s.rows() != slices_.front().rows() || s.cols() != slices_.front().cols())
      throw InputError("slices have different shapes");
}

Tensor3 matmul_tensor(std::size_t n, std::size_t l, std::size_t m) {
  if (n == 0 || l == 0 || m == 0) throw InputError("matmul_tensor: zero dimension");
  Tensor3 t(n * l, l * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < m; ++k) t.set(i * l + j, j * m + k, i * m + k, 1);
  return t;
}

Matrix contract_a(const Tensor3& t, std::span<const Rational> alpha) {
  if (alpha.size() != t.dim_a()) throw InputError("contract_a: covector length does not match dim A");
  Matrix out(t.dim_b(), t.dim_c());
  for (const auto& [at, v] : t.entries())
    if (sgn(alpha[at.i]) != 0) out(at.j, at.k) += alpha[at.i] * v;
  return out;
}

Matrix unfold_a(const Tensor3& t) {
  Matrix out(t.dim_a(), t.dim_b() * t.dim_c());
  for (const auto& [at, v] : t.entries()) out(at.i, at.j * t.dim_c() + at.k) = v;
  return out;
}

SliceFamily slice_family(const Tensor3& t, std::span<const Vector> alphas) {
  if (alphas.size() < 3 || alphas.size() % 2 == 0)
    throw InputError("slice_family needs an odd number (2p+1 >= 3) of covectors");
  const int p = static_cast<int>(alphas.size() - 1) / 2;
  Matrix stacked(alphas.size(), t.dim_a());
  for (std::size_t r = 0; r < alphas.size(); ++r) {
    if (alphas[r].size() != t.dim_a()) throw InputError("contract_a: covector length does not match dim A");
    for (std::size_t c = 0; c < t.dim_a(); ++c) stacked(r, c) = alphas[r][c];
  }
  if (rank_exact(stacked) != alphas.size())
    throw DegenerateError("subspace not (2p+1)-dimensional");
  std::vector<Matrix> slices;
  slices.reserve(alphas.size());
  for (const auto& a : alphas) slices.push_back(contract_a(t, a));
  return SliceFamily(p, std::move(slices));
}

bool verify_decomposition(const Tensor3& t, std::span<const RankOneTerm> terms) {
  Tensor3 sum(t.dim_a(), t.dim_b(), t.dim_c());
  for (const auto& term : terms) {
    if (term.a.size() != t.dim_a() || term.b.size() != t.dim_b() || term.c.size() != t.dim_c())
      throw InputError("decomposition term shape does not match tensor");
    for (std::size_t i = 0; i < t.dim_a(); ++i) {
      if (sgn(term.a[i]) == 0) continue;
      for (std::size_t j = 0; j < t.dim_b(); ++j) {
        if (sgn(term.b[j]) == 0) continue;
        const Rational ab = term.a[i] * term.b[j];
        for (std::size_t k = 0; k < t.dim_c(); ++k)
          if (sgn(term.c[k]) != 0) sum.add(i, j, k, ab * term.c[k]);
      }
    }
  }
  return sum == t;
}

std::size_t left_kernel_dim(const Tensor3& t) { return t.dim_a() - rank_exact(unfold_a(t)); }

Matrix lift_endomorphism(const Matrix& alpha, std::size_t m) {
  if (!alpha.is_square()) throw InputError("lift_endomorphism: alpha must be square");
  return kronecker(alpha, Matrix::identity(m));
}

Vector flatten_matrix(const Matrix& m) { return {m.entries().begin(), m.entries().end()}; }

}  // namespace koszul
