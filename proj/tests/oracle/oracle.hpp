#pragma once

// Reference implementations used only by the tests. Nothing here depends on
// the koszul library: matrices are plain nested vectors, determinants and
// ranks use textbook Gaussian elimination over Q, and the Koszul map is
// built straight from the wedge product with inversion-count signs.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;

Mat zeros(std::size_t rows, std::size_t cols);
Mat identity(std::size_t n);
Mat mul(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat commutator(const Mat& a, const Mat& b);

Q det(Mat m);
std::size_t rank(Mat m);

// Sparse order-3 tensor: (i, j, k) -> value.
struct Tensor {
  std::array<std::size_t, 3> dims{};
  std::map<std::array<std::size_t, 3>, Q> entries;
};

Tensor matmul(std::size_t n, std::size_t l, std::size_t m);
Mat slice(const Tensor& t, const std::vector<Q>& alpha);

// Matrix of a_J (x) beta -> sum_i (-1)^i (a_i ^ a_J) (x) X_i(beta), rows
// indexed by ((p+1)-subset, c), columns by (p-subset, b), both subsets in
// plain lexicographic order.
Mat koszul_map(const std::vector<Mat>& slices, int p);

// Border-rank certificate ceil(rank / binom(2p, p)) for the given covectors.
std::size_t certificate(const Tensor& t, const std::vector<std::vector<Q>>& alphas, int p);

// sum_t a_t (x) b_t (x) c_t, expanded entrywise.
Tensor expand(const std::vector<std::array<std::vector<Q>, 3>>& terms, std::array<std::size_t, 3> dims);

}  // namespace oracle
