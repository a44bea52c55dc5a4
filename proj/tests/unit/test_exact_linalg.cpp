#include "support.hpp"

#include "koszul/error.hpp"
#include "koszul/exact_linalg.hpp"

using namespace koszul;
using test_support::random_invertible;
using test_support::random_matrix;

TEST_CASE("rationals are canonical") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK(to_string(parse_rational("-3/6")) == "-1/2");
  CHECK_THROWS_AS(parse_rational("3/-6"), InputError);
  CHECK(parse_rational("0/7") == 0);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  // Large numerators stay exact.
  const Rational big = parse_rational("123456789012345678901234567890/3");
  CHECK(big * 3 == parse_rational("123456789012345678901234567890"));
}

TEST_CASE("commutator examples") {
  Rng rng(1);
  const Matrix x = random_matrix(3, 3, rng);
  CHECK(commutator(x, x).is_zero());
  CHECK(commutator(Matrix{{1, 0}, {0, 2}}, Matrix{{3, 0}, {0, 4}}).is_zero());
  CHECK(commutator(Matrix{{0, 1}, {0, 0}}, Matrix{{0, 0}, {1, 0}}) == Matrix{{1, 0}, {0, -1}});
  CHECK_THROWS_WITH_AS(commutator(Matrix(2, 2), Matrix(3, 3)), "incompatible shapes", InputError);
  CHECK_THROWS_AS(commutator(Matrix(2, 3), Matrix(2, 3)), InputError);
}

TEST_CASE("determinant examples") {
  CHECK(det_exact(Matrix::identity(5)) == 1);
  CHECK(det_exact(Matrix{{1, 2}, {3, 4}}) == -2);
  CHECK(det_exact(Matrix{{1, 2}, {2, 4}}) == 0);
  CHECK(det_exact(Matrix{{0, 1}, {1, 0}}) == -1);
  CHECK_THROWS_AS(det_exact(Matrix(2, 3)), InputError);
}

TEST_CASE("rank examples") {
  CHECK(rank_exact(Matrix(3, 4)) == 0);
  CHECK(rank_exact(Matrix::identity(6)) == 6);
  const Matrix u{{1}, {2}, {-3}, {4}};
  const Matrix v{{5, -1, 2, 7}};
  CHECK(rank_exact(u * v) == 1);
}

TEST_CASE("determinant and rank agree with the Gaussian-elimination oracle") {
  const Rng root(11);
  for (std::uint64_t t = 0; t < 60; ++t) {
    Rng rng = root.split(t);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 7));
    const Matrix m = random_matrix(n, n, rng, 5);
    CHECK(det_exact(m) == oracle::det(test_support::to_oracle(m)));

    // Low-rank rectangular matrices as products of thin factors.
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 7));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 7));
    const auto inner = static_cast<std::size_t>(rng.uniform(1, 4));
    const Matrix lr = random_matrix(rows, inner, rng, 3) * random_matrix(inner, cols, rng, 3);
    CHECK(rank_exact(lr) == oracle::rank(test_support::to_oracle(lr)));
  }
}

TEST_CASE("property: det != 0 iff full rank, rank(M) = rank(M^t)") {
  const Rng root(12);
  for (std::uint64_t t = 0; t < 80; ++t) {
    Rng rng = root.split(t);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto k = static_cast<std::size_t>(rng.uniform(1, 6));
    const Matrix m = random_matrix(n, k, rng, 2) * random_matrix(k, n, rng, 2);
    CHECK((sgn(det_exact(m)) != 0) == (rank_exact(m) == n));
    CHECK(rank_exact(m) == rank_exact(transpose(m)));
    CHECK(rank_exact(m) <= std::min(n, k));
  }
}

TEST_CASE("property: det is multiplicative") {
  const Rng root(13);
  for (std::uint64_t t = 0; t < 40; ++t) {
    Rng rng = root.split(t);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    const Matrix a = random_matrix(n, n, rng);
    const Matrix b = random_matrix(n, n, rng);
    CHECK(det_exact(a * b) == det_exact(a) * det_exact(b));
  }
}

TEST_CASE("inverse") {
  const Rng root(14);
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = root.split(t);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const Matrix a = random_invertible(n, rng);
    CHECK((a * inverse(a)).is_identity());
    CHECK(det_exact(inverse(a)) * det_exact(a) == 1);
  }
  CHECK_THROWS_WITH_AS(inverse(Matrix{{1, 2}, {2, 4}}), "matrix is singular", DegenerateError);
}

TEST_CASE("block helpers") {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{5}, {6}};
  const Matrix h = hstack(a, b);
  CHECK(h.rows() == 2);
  CHECK(h.cols() == 3);
  CHECK(h.block(0, 2, 2, 1) == b);
  const Matrix v = vstack(a, Matrix{{7, 8}});
  CHECK(v.block(2, 0, 1, 2) == Matrix{{7, 8}});
  CHECK(kronecker(Matrix::identity(2), a).block(2, 2, 2, 2) == a);
  CHECK(kronecker(Matrix::identity(2), a).block(0, 2, 2, 2).is_zero());
  CHECK(assemble_2x2(a, a, a, a).block(2, 0, 2, 2) == a);
  CHECK_THROWS_AS(hstack(a, Matrix(3, 1)), InputError);
  CHECK_THROWS_AS(a * Matrix(3, 3), InputError);
  CHECK_THROWS_AS(a.block(1, 1, 2, 2), InputError);
}

TEST_CASE("Schur block determinant examples") {
  const Matrix id = Matrix::identity(2);
  const Matrix zero(2, 2);
  CHECK(schur_block_det(id, zero, zero, id) == 1);
  const Matrix w{{2, 7}, {1, 5}};
  CHECK(schur_block_det(id, Matrix{{4, 4}, {1, 9}}, zero, w) == det_exact(w));
  CHECK_THROWS_WITH_AS(schur_block_det(Matrix{{1, 1}, {1, 1}}, zero, zero, id), "Schur pivot singular",
                       DegenerateError);
}

TEST_CASE("Schur block determinant matches the assembled block matrix") {
  const Rng root(21);
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = root.split(t);
    const Matrix x = random_invertible(2, rng, 5);
    const Matrix y = random_matrix(2, 2, rng, 5);
    const Matrix z = random_matrix(2, 2, rng, 5);
    const Matrix w = random_matrix(2, 2, rng, 5);
    const Rational direct = oracle::det(test_support::to_oracle(assemble_2x2(x, y, z, w)));
    CHECK(schur_block_det(x, y, z, w) == direct);
  }
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = root.split(100 + t);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 4));
    const Matrix x = random_invertible(n, rng);
    const Matrix y = random_matrix(n, m, rng);
    const Matrix z = random_matrix(m, n, rng);
    const Matrix w = random_matrix(m, m, rng);
    CHECK(schur_block_det(x, y, z, w) == det_exact(assemble_2x2(x, y, z, w)));
  }
}

TEST_CASE("rank-update determinant") {
  const Rng root(22);
  Rng rng = root.split("a");
  const Matrix a = random_invertible(3, rng);
  CHECK(det_rank_update(a, Matrix(3, 2), random_matrix(3, 2, rng)) == det_exact(a));
  const Matrix e1{{1}, {0}, {0}};
  CHECK(det_rank_update(Matrix::identity(3), e1, e1) == 2);
  CHECK_THROWS_AS(det_rank_update(Matrix(2, 2), Matrix(2, 1), Matrix(2, 1)), DegenerateError);
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng r = root.split(t);
    const Matrix base = random_invertible(3, r);
    const Matrix u = random_matrix(3, 2, r);
    const Matrix v = random_matrix(3, 2, r);
    const Rational direct = oracle::det(test_support::to_oracle(base + u * transpose(v)));
    CHECK(det_rank_update(base, u, v) == direct);
  }
}
