#include "support.hpp"

#include <set>

#include "koszul/error.hpp"
#include "koszul/flattening.hpp"
#include "koszul/keylemma.hpp"
#include "koszul/wedge.hpp"

using namespace koszul;
using test_support::abs_value;
using test_support::random_matrix;

namespace {

PolynomialEvaluator product_x1_x2() {
  return {4, 2, [](std::span<const Rational> x) { return Rational(x[0] * x[1]); }, {}};
}

PolynomialEvaluator generic_det(std::size_t m) {
  return {m * m, m, [m](std::span<const Rational> x) {
            return det_exact(Matrix::from_entries(m, m, Vector(x.begin(), x.end())));
          },
          {}};
}

PolynomialEvaluator coordinate_sum(std::size_t n) {
  return {n, 1, [](std::span<const Rational> x) {
            Rational s = 0;
            for (const auto& v : x) s += v;
            return s;
          },
          {}};
}

void check_result(const PolynomialEvaluator& poly, const SupportResult& r) {
  CHECK(r.support.size() <= poly.degree_bound);
  CHECK(sgn(r.value) != 0);
  CHECK(poly.eval(r.point) == r.value);
  const std::set<std::size_t> s(r.support.begin(), r.support.end());
  for (std::size_t i = 0; i < poly.arity; ++i)
    if (!s.count(i)) CHECK(sgn(r.point[i]) == 0);
}

}  // namespace

TEST_CASE("h examples and identity") {
  CHECK(h_value(10, 2) == 20);
  CHECK(h_value(10, 3) == -160);
  CHECK(h_value(9, 2) == 9);
  CHECK(h_value(3, 1) == 0);
  for (std::int64_t n = 1; n <= 60; ++n)
    for (int p = 1; p <= 6; ++p) {
      const auto c = static_cast<std::int64_t>(2 * binomial(2 * p, p + 1) - binomial(2 * p - 2, p - 1) + 2);
      CHECK(h_value(n, p) + n * c == n * n);
    }
  CHECK_THROWS_AS(h_value(3, 0), InputError);
}

TEST_CASE("sampling range dominates the degree") {
  CHECK(sampling_range(0) == (1 << 20));
  for (std::size_t d = 1; d < 100; d += 7) CHECK(sampling_range(d) >= (std::int64_t{1} << 20) * static_cast<std::int64_t>(d));
}

TEST_CASE("support search on the trivial polynomials") {
  const auto prod = product_x1_x2();
  const auto r1 = support_restriction_search(prod, Rng(1));
  check_result(prod, r1);
  CHECK(r1.support == std::vector<std::size_t>{0, 1});

  for (std::size_t n = 2; n <= 4; ++n) {
    const auto det = generic_det(n);
    const auto r2 = support_restriction_search(det, Rng(2));
    check_result(det, r2);
    // A minimal support of det is the pattern of one permutation.
    REQUIRE(r2.support.size() == n);
    std::set<std::size_t> rows;
    std::set<std::size_t> cols;
    for (auto i : r2.support) {
      rows.insert(i / n);
      cols.insert(i % n);
    }
    CHECK(rows.size() == n);
    CHECK(cols.size() == n);
  }

  const auto sum = coordinate_sum(6);
  const auto r3 = support_restriction_search(sum, Rng(3));
  check_result(sum, r3);
  CHECK(r3.support.size() == 1);
}

TEST_CASE("support search is deterministic per seed") {
  const auto det = generic_det(3);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = support_restriction_search(det, Rng(seed));
    const auto b = support_restriction_search(det, Rng(seed));
    CHECK(a.support == b.support);
    CHECK(a.point == b.point);
  }
}

TEST_CASE("support search errors") {
  const PolynomialEvaluator zero{3, 2, [](std::span<const Rational>) { return Rational(0); }, {}};
  CHECK_THROWS_WITH_AS(support_restriction_search(zero, Rng(0)), "polynomial appears identically zero (probabilistic)",
                       DegenerateError);
  // A cubic monomial declared as degree 2 cannot shrink below three variables.
  const PolynomialEvaluator cubic{3, 2, [](std::span<const Rational> x) { return Rational(x[0] * x[1] * x[2]); }, {}};
  CHECK_THROWS_AS(support_restriction_search(cubic, Rng(0)), DegenerateError);
  CHECK_THROWS_AS(support_restriction_search(PolynomialEvaluator{2, 1, {}, {}}, Rng(0)), InputError);
}

TEST_CASE("grouped coordinates are dropped together") {
  // x0 * x2 + x1 * x3 with groups {0,1} -> 0 and {2,3} -> 1: both groups are needed.
  const PolynomialEvaluator poly{4, 2,
                                 [](std::span<const Rational> x) { return Rational(x[0] * x[2] + x[1] * x[3]); },
                                 {0, 0, 1, 1}};
  CHECK(poly.group_count() == 2);
  const auto r = support_restriction_search(poly, Rng(4));
  CHECK(r.support == std::vector<std::size_t>{0, 1});
}

TEST_CASE("degree along a line") {
  for (std::size_t m = 1; m <= 6; ++m) CHECK(degree_along_line(generic_det(m), Rng(m)) == static_cast<int>(m));
  const PolynomialEvaluator seven{3, 4, [](std::span<const Rational>) { return Rational(7); }, {}};
  CHECK(degree_along_line(seven, Rng(0)) == 0);
  const PolynomialEvaluator zero{3, 4, [](std::span<const Rational>) { return Rational(0); }, {}};
  CHECK(degree_along_line(zero, Rng(0)) == -1);
  const PolynomialEvaluator cubic{1, 1, [](std::span<const Rational> x) { return Rational(x[0] * x[0] * x[0]); }, {}};
  CHECK_THROWS_AS(degree_along_line(cubic, Rng(0)), DegenerateError);
}

TEST_CASE("det([X1, X2]) has degree n in the entries of X1") {
  for (std::size_t n = 2; n <= 3; ++n) {
    Rng rng(60 + n);
    const Matrix x2 = random_matrix(n, n, rng);
    const PolynomialEvaluator poly{n * n, 2 * n, [&](std::span<const Rational> x) {
                                     return det_exact(commutator(Matrix::from_entries(n, n, Vector(x.begin(), x.end())), x2));
                                   },
                                   {}};
    CHECK(degree_along_line(poly, Rng(n)) == static_cast<int>(n));
  }
}

TEST_CASE("generic nonvanishing") {
  for (auto [n, p] : std::vector<std::pair<std::size_t, int>>{{2, 1}, {3, 2}}) {
    const auto r = generic_nonvanishing(n, p, 0, 5);
    REQUIRE(r.nonzero);
    CHECK(r.trials_used <= 5);
    REQUIRE(r.witness);
    CHECK(sgn(r.det) != 0);
    CHECK(det_exact(qqbar(*r.witness).value) == r.det);
    for (std::size_t k = 1; k < r.witness->size(); ++k) {
      Rational trace = 0;
      for (std::size_t i = 0; i < n; ++i) trace += (*r.witness)[k](i, i);
      CHECK(trace == 0);
    }
  }
  CHECK_THROWS_WITH_AS(generic_nonvanishing(1, 1, 0, 5), "p too large for n", InputError);
  CHECK_THROWS_AS(generic_nonvanishing(2, 2, 0, 5), InputError);
}

TEST_CASE("stage-3 value: direct Schur route equals the quotient route") {
  const Rng root(61);
  struct Case {
    int p;
    std::size_t n;
  };
  for (const auto& c : {Case{2, 2}, Case{2, 3}, Case{3, 3}})
    for (std::uint64_t t = 0; t < 3; ++t) {
      Rng rng = root.split(static_cast<std::uint64_t>(c.p) * 100 + c.n * 10 + t);
      std::vector<Matrix> x{Matrix::identity(c.n)};
      for (int k = 1; k <= 2 * c.p; ++k) x.push_back(random_matrix(c.n, c.n, rng));
      CHECK(stage3_schur_value(x, c.p) == stage3_quotient_value(x, c.p));
    }
  CHECK_THROWS_AS(stage3_quotient_value({Matrix::identity(2), Matrix(2, 2), Matrix(2, 2)}, 1), InputError);
}

TEST_CASE("skew commutator matrix is block-skew but not determinant-equivalent to qqbar") {
  const Rng root(62);
  std::size_t differ = 0;
  for (std::uint64_t t = 0; t < 3; ++t) {
    Rng rng = root.split(t);
    std::vector<Matrix> x{Matrix::identity(3)};
    for (int k = 1; k <= 4; ++k) x.push_back(random_matrix(3, 3, rng));
    const SliceFamily fam(2, x);
    const Matrix skew = skew_commutator_matrix(fam);
    REQUIRE(skew.rows() == 12);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        const Matrix b = skew.block(i * 3, j * 3, 3, 3);
        CHECK(b == -skew.block(j * 3, i * 3, 3, 3));
        if (i < j) CHECK(b == commutator(x[i + 1], x[j + 1]));
      }
    if (abs_value(det_exact(skew)) != abs_value(det_exact(qqbar(fam).value))) ++differ;
  }
  // Recorded discrepancy: the two determinants are different polynomials.
  CHECK(differ == 3);
}

TEST_CASE("degree audits") {
  // Five slices in the four-dimensional 2x2 matrices are dependent: zero polynomial.
  CHECK(refined_p2_audit(2, 7).measured == -1);
  const auto a = refined_p2_audit(3, 7);
  CHECK(a.expected == 12);
  CHECK(a.measured == 12);
  const auto b = reduced_p1_audit_p3(2, 7);
  CHECK(b.measured >= 0);
  CHECK(b.measured <= b.degree_bound);
  MESSAGE("p=3 stage-1 audit, n=2: measured " << b.measured << ", claimed " << b.expected);
}

TEST_CASE("key lemma pipeline at Strassen scale") {
  const auto basis = elementary_basis(3);
  const auto w = key_lemma_search(3, 1, basis, 0);
  const auto check = validate_witness(w, basis);
  CHECK(check.ok());
  std::set<std::size_t> used;
  for (const auto& s : w.subsets) used.insert(s.begin(), s.end());
  CHECK(used.size() <= 9);
  CHECK(w.subsets[3].empty());
  const auto norm = normalize(SliceFamily(1, w.alphas));
  CHECK(sgn(det_exact(commutator(norm[1], norm[2]))) != 0);
  CHECK(used.size() + w.complement.size() == basis.size());
}

TEST_CASE("key lemma witnesses respect the stage size bounds") {
  for (auto [n, p] : std::vector<std::pair<std::size_t, int>>{{3, 1}, {4, 1}, {3, 2}, {4, 2}}) {
    const auto basis = elementary_basis(n);
    const auto w = key_lemma_search(n, p, basis, 3);
    CHECK_MESSAGE(validate_witness(w, basis).ok(), "n=" << n << " p=" << p);
    const auto big = binomial(2 * p, p + 1);
    const auto mid = binomial(2 * p - 2, p - 1);
    CHECK(w.subsets[0].size() <= n);
    CHECK(w.subsets[1].size() <= n * big);
    CHECK(w.subsets[2].size() <= n);
    CHECK(w.subsets[3].size() <= n * (big - mid));
    CHECK(static_cast<std::int64_t>(w.complement.size()) >= h_value(static_cast<std::int64_t>(n), p));
  }
}

TEST_CASE("key lemma with a non-elementary basis and determinism") {
  Rng rng(63);
  std::vector<Matrix> basis;
  Matrix change = test_support::random_invertible(9, rng, 2);
  const auto elem = elementary_basis(3);
  for (std::size_t b = 0; b < 9; ++b) {
    Matrix m(3, 3);
    for (std::size_t e = 0; e < 9; ++e) m += change(b, e) * elem[e];
    basis.push_back(m);
  }
  const auto w = key_lemma_search(3, 1, basis, 9);
  CHECK(validate_witness(w, basis).ok());
  const auto again = key_lemma_search(3, 1, basis, 9);
  CHECK(again.subsets == w.subsets);
  CHECK(again.alphas == w.alphas);
}

TEST_CASE("key lemma input errors") {
  auto basis = elementary_basis(3);
  basis[4] = basis[0];
  CHECK_THROWS_WITH_AS(key_lemma_search(3, 1, basis, 0), "stage P0: basis does not span the n x n matrices", InputError);
  CHECK_THROWS_AS(key_lemma_search(3, 4, elementary_basis(3), 0), InputError);
  CHECK_THROWS_AS(key_lemma_search(1, 1, elementary_basis(1), 0), InputError);
}

TEST_CASE("validation catches a tampered witness") {
  const auto basis = elementary_basis(3);
  auto w = key_lemma_search(3, 1, basis, 0);
  w.alphas[2] = w.alphas[1];
  const auto check = validate_witness(w, basis);
  CHECK_FALSE(check.independent);
  CHECK_FALSE(check.ok());
}
