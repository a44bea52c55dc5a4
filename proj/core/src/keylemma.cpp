#include "koszul/keylemma.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "koszul/error.hpp"
#include "koszul/flattening.hpp"
#include "koszul/wedge.hpp"

namespace koszul {

std::size_t PolynomialEvaluator::group_count() const {
  if (group_of.empty()) return arity;
  return *std::max_element(group_of.begin(), group_of.end()) + 1;
}

std::int64_t sampling_range(std::size_t degree_bound) {
  return (std::int64_t{1} << 20) * static_cast<std::int64_t>(std::max<std::size_t>(degree_bound, 1));
}

namespace {

Vector sample_point(const PolynomialEvaluator& poly, const std::vector<bool>& active, std::int64_t range, Rng& rng) {
  Vector x(poly.arity);
  for (std::size_t i = 0; i < poly.arity; ++i) {
    const std::size_t g = poly.group_of.empty() ? i : poly.group_of[i];
    if (active[g]) x[i] = static_cast<long>(rng.uniform(-range, range));
  }
  return x;
}

Matrix random_matrix(std::size_t n, std::int64_t bound, Rng& rng) {
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(rng.uniform(-bound, bound));
  return m;
}

Matrix combine(const std::vector<Matrix>& basis, std::span<const Rational> coeffs) {
  Matrix out(basis.front().rows(), basis.front().cols());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (sgn(coeffs[b]) == 0) continue;
    const auto src = basis[b].entries();
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) {
        const Rational& e = src[r * out.cols() + c];
        if (sgn(e) != 0) out(r, c) += coeffs[b] * e;
      }
  }
  return out;
}

// Distinct diagonal labels of the qqbar pattern avoiding X_1 and X_2p.
std::vector<BlockLabel> stage1_labels(const SymbolicBlockMatrix& pattern, int p) {
  std::set<std::pair<int, int>> seen;
  std::vector<BlockLabel> out;
  for (std::size_t i = 0; i < pattern.block_rows(); ++i) {
    const auto& l = pattern.at(i, i);
    if (l.is_zero() || l.involves(1) || l.involves(2 * p)) continue;
    if (seen.insert({l.i, l.j}).second) out.push_back(BlockLabel::commutator(l.i, l.j));
  }
  return out;
}

Rational stage1_product(const std::vector<BlockLabel>& labels, const std::vector<Matrix>& x) {
  Rational prod = 1;
  for (const auto& l : labels) {
    prod *= det_exact(commutator(x[static_cast<std::size_t>(l.i)], x[static_cast<std::size_t>(l.j)]));
    if (sgn(prod) == 0) break;
  }
  return prod;
}

// Block-diagonal A of the stage-P3 step: diagonal qqbar blocks avoiding X_1
// and X_2p, identity elsewhere.
std::vector<Matrix> stage3_diagonal(const SymbolicBlockMatrix& pattern, const std::vector<Matrix>& x, int p) {
  const std::size_t n = x.front().rows();
  std::vector<Matrix> a;
  for (std::size_t i = 0; i < pattern.block_rows(); ++i) {
    const auto& l = pattern.at(i, i);
    if (l.is_zero() || l.involves(1) || l.involves(2 * p)) {
      a.push_back(Matrix::identity(n));
    } else {
      Matrix block = commutator(x[static_cast<std::size_t>(l.i)], x[static_cast<std::size_t>(l.j)]);
      a.push_back(l.sign < 0 ? -block : block);
    }
  }
  return a;
}

std::vector<Matrix> with_identity_x0(std::vector<Matrix> x) {
  x.front() = Matrix::identity(x.front().rows());
  return x;
}

}  // namespace

SupportResult support_restriction_search(const PolynomialEvaluator& poly, Rng rng, const SearchOptions& options) {
  if (!poly.eval) throw InputError("polynomial evaluator has no eval function");
  if (!poly.group_of.empty() && poly.group_of.size() != poly.arity)
    throw InputError("group map length does not match arity");
  const std::size_t groups = poly.group_count();
  const std::int64_t range = sampling_range(poly.degree_bound);
  std::vector<bool> active(groups, true);

  SupportResult best;
  bool found = false;
  for (std::size_t t = 0; t < std::max<std::size_t>(options.initial_budget, 1) && !found; ++t) {
    Vector x = sample_point(poly, active, range, rng);
    Rational v = poly.eval(x);
    if (sgn(v) != 0) {
      best.point = std::move(x);
      best.value = std::move(v);
      found = true;
    }
  }
  if (!found) throw DegenerateError("polynomial appears identically zero (probabilistic)");

  for (std::size_t g = 0; g < groups; ++g) {
    active[g] = false;
    bool still_nonzero = false;
    for (std::size_t t = 0; t < std::max<std::size_t>(options.retries, 1); ++t) {
      Vector x = sample_point(poly, active, range, rng);
      Rational v = poly.eval(x);
      if (sgn(v) != 0) {
        best.point = std::move(x);
        best.value = std::move(v);
        still_nonzero = true;
        break;
      }
    }
    if (!still_nonzero) active[g] = true;
  }
  for (std::size_t g = 0; g < groups; ++g)
    if (active[g]) best.support.push_back(g);
  if (best.support.size() > poly.degree_bound)
    throw DegenerateError("support of size " + std::to_string(best.support.size()) + " exceeds degree bound " +
                          std::to_string(poly.degree_bound));
  return best;
}

std::int64_t h_value(std::int64_t n, int p) {
  if (p < 1) throw InputError("h_value needs p >= 1");
  const auto c = static_cast<std::int64_t>(2 * binomial(2 * p, p + 1) - binomial(2 * p - 2, p - 1) + 2);
  return n * n - n * c;
}

NonvanishingResult generic_nonvanishing(std::size_t n, int p, std::uint64_t seed, std::size_t trials) {
  if (p < 1) throw InputError("generic_nonvanishing needs p >= 1");
  if (n < 2 || static_cast<std::size_t>(2 * p + 1) > n * n) throw InputError("p too large for n");
  const Rng root = Rng(seed).split("nonvanishing");
  NonvanishingResult out;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    std::vector<Matrix> x{Matrix::identity(n)};
    for (int k = 1; k <= 2 * p; ++k) {
      Matrix m = random_matrix(n, 9, rng);
      Rational trace = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) trace += m(i, i);
      m(n - 1, n - 1) = -trace;
      x.push_back(std::move(m));
    }
    SliceFamily family(p, std::move(x));
    Rational d = det_exact(qqbar(family).value);
    out.trials_used = t + 1;
    if (sgn(d) != 0) {
      out.nonzero = true;
      out.witness = std::move(family);
      out.det = std::move(d);
      return out;
    }
  }
  return out;
}

int degree_along_line(const PolynomialEvaluator& poly, Rng rng) {
  if (!poly.eval) throw InputError("polynomial evaluator has no eval function");
  constexpr std::int64_t kRange = 1000;
  Vector x0(poly.arity);
  Vector v(poly.arity);
  for (auto& e : x0) e = static_cast<long>(rng.uniform(-kRange, kRange));
  for (auto& e : v) e = static_cast<long>(rng.uniform(-kRange, kRange));
  const std::size_t points = poly.degree_bound + 2;
  std::vector<Rational> diff(points);
  Vector x(poly.arity);
  for (std::size_t t = 0; t < points; ++t) {
    for (std::size_t i = 0; i < poly.arity; ++i) x[i] = x0[i] + static_cast<long>(t) * v[i];
    diff[t] = poly.eval(x);
  }
  // After round k, diff[k] holds the k-th forward difference at t = 0.
  int degree = sgn(diff[0]) != 0 ? 0 : -1;
  for (std::size_t k = 1; k < points; ++k) {
    for (std::size_t t = points - 1; t >= k; --t) diff[t] -= diff[t - 1];
    if (sgn(diff[k]) != 0) {
      if (k == points - 1)
        throw DegenerateError("interpolation inconsistency: values are not a polynomial of degree <= " +
                              std::to_string(poly.degree_bound));
      degree = static_cast<int>(k);
    }
  }
  return degree;
}

std::vector<Matrix> elementary_basis(std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Matrix e(n, n);
      e(r, c) = 1;
      out.push_back(std::move(e));
    }
  return out;
}

namespace {

struct Stage3Parts {
  std::size_t q = 0;
  std::size_t m = 0;
  std::vector<Matrix> a;  // diagonal blocks of A
  Matrix value;           // M
};

Stage3Parts stage3_parts(const std::vector<Matrix>& slices, int p) {
  if (p < 2) throw InputError("stage P3 needs p >= 2");
  if (slices.size() != static_cast<std::size_t>(2 * p + 1)) throw InputError("stage P3 needs 2p+1 slices");
  const auto pattern = qqbar_pattern(p);
  const auto xs = with_identity_x0(slices);
  Stage3Parts parts;
  parts.q = pattern.block_rows();
  parts.m = binomial(2 * p - 2, p - 1);
  parts.a = stage3_diagonal(pattern, xs, p);
  parts.value = assemble(pattern, xs);
  return parts;
}

}  // namespace

Rational stage3_schur_value(const std::vector<Matrix>& slices, int p) {
  const auto parts = stage3_parts(slices, p);
  const std::size_t n = slices.front().rows();
  const std::size_t top = (parts.q - parts.m) * n;
  const std::size_t low = parts.m * n;
  Matrix scaled(parts.q * n, parts.q * n);
  for (std::size_t i = 0; i < parts.q; ++i)
    scaled.set_block(i * n, 0, inverse(parts.a[i]) * parts.value.block(i * n, 0, n, parts.q * n));
  const Matrix y = scaled.block(0, 0, top, low);
  const Matrix z = scaled.block(0, low, top, top);
  const Matrix l = scaled.block(top, 0, low, low);
  const Matrix w = scaled.block(top, low, low, top);
  return det_exact(z - y * inverse(l) * w);
}

Rational stage3_quotient_value(const std::vector<Matrix>& slices, int p) {
  const auto parts = stage3_parts(slices, p);
  const std::size_t n = slices.front().rows();
  Rational det_a = 1;
  for (const auto& block : parts.a) det_a *= det_exact(block);
  if (sgn(det_a) == 0) throw DegenerateError("diagonal block matrix A is singular");
  // L is block diagonal: A_i^{-1} times the lower-left diagonal blocks of M.
  Rational det_l = 1;
  const std::size_t first = parts.q - parts.m;
  for (std::size_t i = 0; i < parts.m; ++i)
    det_l *= det_exact(parts.value.block((first + i) * n, i * n, n, n)) / det_exact(parts.a[first + i]);
  if (sgn(det_l) == 0) throw DegenerateError("lower-left block L is singular");
  // det N = (-1)^(|L| |Z|) det(L) det(Z - Y L^{-1} W) after swapping block columns.
  const std::size_t swaps = (parts.m * n) * ((parts.q - parts.m) * n);
  Rational v = det_exact(parts.value) / (det_a * det_l);
  return swaps % 2 == 0 ? v : Rational(-v);
}

namespace {

struct StageFailure : DegenerateError {
  using DegenerateError::DegenerateError;
};

template <typename F>
auto run_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (const DegenerateError& e) {
    throw StageFailure(std::string("stage ") + stage + ": " + e.what());
  }
}

KeyLemmaWitness run_pipeline(std::size_t n, int p, const std::vector<Matrix>& basis, Rng rng,
                             const SearchOptions& search) {
  const std::size_t nb = basis.size();
  const int top = 2 * p;
  const auto pattern = qqbar_pattern(p);
  KeyLemmaWitness w;
  w.n = n;
  w.p = p;
  std::vector<Vector> coeffs(static_cast<std::size_t>(top + 1), Vector(nb));

  // P0: det(alpha^0).
  const auto r0 = run_stage("P0", [&] {
    PolynomialEvaluator poly{nb, n, [&](std::span<const Rational> c) { return det_exact(combine(basis, c)); }, {}};
    return support_restriction_search(poly, rng.split("P0"), search);
  });
  w.subsets[0] = r0.support;
  coeffs[0] = r0.point;
  const Matrix alpha0 = combine(basis, coeffs[0]);
  // adj(alpha^0) alpha^i = det(alpha^0) X_i: integral, and every stage
  // polynomial only changes by a nonzero constant factor.
  const Matrix adj = det_exact(alpha0) * inverse(alpha0);
  auto x_of = [&](std::span<const Rational> c) { return adj * combine(basis, c); };

  std::vector<Matrix> x(static_cast<std::size_t>(top + 1), Matrix(n, n));
  x[0] = Matrix::identity(n);

  // P1: the X_2..X_{2p-1} (X_2 alone for p = 1).
  std::vector<int> unknowns;
  if (p == 1) {
    unknowns = {2};
  } else {
    for (int k = 2; k < top; ++k) unknowns.push_back(k);
  }
  const auto labels = stage1_labels(pattern, p);
  const Matrix aux = [&] {
    Rng a = rng.split("aux");
    return random_matrix(n, 9, a);
  }();
  const auto r1 = run_stage("P1", [&] {
    std::vector<std::size_t> groups(unknowns.size() * nb);
    for (std::size_t i = 0; i < groups.size(); ++i) groups[i] = i % nb;
    const std::size_t degree = p == 1 ? n : 2 * n * labels.size();
    PolynomialEvaluator poly{unknowns.size() * nb, degree,
                             [&](std::span<const Rational> c) {
                               if (p == 1) return det_exact(commutator(aux, x_of(c)));
                               std::vector<Matrix> xs = x;
                               for (std::size_t u = 0; u < unknowns.size(); ++u)
                                 xs[static_cast<std::size_t>(unknowns[u])] = x_of(c.subspan(u * nb, nb));
                               return stage1_product(labels, xs);
                             },
                             groups};
    return support_restriction_search(poly, rng.split("P1"), search);
  });
  w.subsets[1] = r1.support;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto k = static_cast<std::size_t>(unknowns[u]);
    coeffs[k].assign(r1.point.begin() + static_cast<std::ptrdiff_t>(u * nb),
                     r1.point.begin() + static_cast<std::ptrdiff_t>((u + 1) * nb));
    x[k] = x_of(coeffs[k]);
  }

  // P2: det([X_1, X_2]) with X_2 fixed.
  const auto r2 = run_stage("P2", [&] {
    PolynomialEvaluator poly{nb, n, [&](std::span<const Rational> c) { return det_exact(commutator(x_of(c), x[2])); },
                             {}};
    return support_restriction_search(poly, rng.split("P2"), search);
  });
  w.subsets[2] = r2.support;
  coeffs[1] = r2.point;
  x[1] = x_of(coeffs[1]);

  // P3: det(Z - Y L^{-1} W) in X_2p, evaluated through the quotient form.
  if (p >= 2) {
    const std::size_t q = pattern.block_rows();
    const std::size_t m = binomial(2 * p - 2, p - 1);
    const auto r3 = run_stage("P3", [&] {
      const auto xs = with_identity_x0(x);
      PolynomialEvaluator poly{nb, n * (q - m),
                               [&](std::span<const Rational> c) {
                                 auto xv = xs;
                                 xv[static_cast<std::size_t>(top)] = x_of(c);
                                 return stage3_quotient_value(xv, p);
                               },
                               {}};
      return support_restriction_search(poly, rng.split("P3"), search);
    });
    w.subsets[3] = r3.support;
    coeffs[static_cast<std::size_t>(top)] = r3.point;
    x[static_cast<std::size_t>(top)] = x_of(coeffs[static_cast<std::size_t>(top)]);
  }

  for (const auto& c : coeffs) w.alphas.push_back(combine(basis, c));
  std::set<std::size_t> used;
  for (const auto& s : w.subsets) used.insert(s.begin(), s.end());
  for (std::size_t b = 0; b < nb; ++b)
    if (!used.count(b)) w.complement.push_back(b);
  w.h = h_value(static_cast<std::int64_t>(n), p);
  run_stage("final", [&] {
    w.qqbar_det = det_exact(qqbar(normalize(SliceFamily(p, w.alphas))).value);
    if (sgn(w.qqbar_det) == 0) throw DegenerateError("det(QQbar) vanished at the fixed point");
    return 0;
  });
  return w;
}

}  // namespace

KeyLemmaWitness key_lemma_search(std::size_t n, int p, const std::vector<Matrix>& basis, std::uint64_t seed,
                                 const KeyLemmaOptions& options) {
  if (p < 1 || p > 3) throw InputError("key_lemma_search supports p in {1, 2, 3}");
  if (n < 2) throw InputError("key_lemma_search needs n >= 2");
  if (basis.size() != n * n) throw InputError("stage P0: basis must have n^2 elements");
  Matrix stacked(basis.size(), n * n);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (basis[b].rows() != n || basis[b].cols() != n) throw InputError("stage P0: basis element is not n x n");
    for (std::size_t i = 0; i < n * n; ++i) stacked(b, i) = basis[b].entries()[i];
  }
  if (rank_exact(stacked) != n * n) throw InputError("stage P0: basis does not span the n x n matrices");

  const Rng root = Rng(seed).split("keylemma");
  std::string last = "no attempts";
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options.attempts, 1); ++attempt) {
    try {
      auto w = run_pipeline(n, p, basis, root.split(attempt), options.search);
      w.seed = seed;
      w.attempts = attempt + 1;
      return w;
    } catch (const StageFailure& e) {
      last = e.what();
    }
  }
  throw DegenerateError(last);
}

WitnessCheck validate_witness(const KeyLemmaWitness& w, const std::vector<Matrix>& basis) {
  WitnessCheck check;
  const std::size_t n = w.n;
  const int p = w.p;
  if (w.alphas.size() != static_cast<std::size_t>(2 * p + 1)) return check;
  Matrix stacked(w.alphas.size(), n * n);
  for (std::size_t i = 0; i < w.alphas.size(); ++i)
    for (std::size_t j = 0; j < n * n; ++j) stacked(i, j) = w.alphas[i].entries()[j];
  check.independent = rank_exact(stacked) == w.alphas.size();
  check.alpha0_invertible = sgn(det_exact(w.alphas[0])) != 0;
  if (check.alpha0_invertible)
    check.qqbar_nonzero = sgn(det_exact(qqbar(normalize(SliceFamily(p, w.alphas))).value)) != 0;
  const std::size_t q = binomial(2 * p, p + 1);
  const std::size_t m = binomial(2 * p - 2, p - 1);
  check.subset_sizes = w.subsets[0].size() <= n && w.subsets[1].size() <= n * q && w.subsets[2].size() <= n &&
                       w.subsets[3].size() <= n * (q - m);
  std::set<std::size_t> used;
  for (const auto& s : w.subsets) used.insert(s.begin(), s.end());
  const auto complement = static_cast<std::int64_t>(basis.size() - used.size());
  check.complement_size = complement >= h_value(static_cast<std::int64_t>(n), p) &&
                          complement == static_cast<std::int64_t>(w.complement.size());
  return check;
}

Matrix skew_commutator_matrix(const SliceFamily& slices) {
  if (slices.p() != 2) throw InputError("skew commutator matrix needs p = 2");
  const std::size_t n = slices.rows();
  Matrix out(4 * n, 4 * n);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Matrix c = commutator(slices[i + 1], slices[j + 1]);
      out.set_block(i * n, j * n, c);
      out.set_block(j * n, i * n, -c);
    }
  return out;
}

DegreeAudit refined_p2_audit(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InputError("audit needs n >= 1");
  Rng rng = Rng(seed).split("refined-p2");
  const Matrix x1 = random_matrix(n, 9, rng);
  const Matrix x2 = random_matrix(n, 9, rng);
  const std::size_t nn = n * n;
  PolynomialEvaluator poly{2 * nn, 8 * n,
                           [&](std::span<const Rational> c) {
                             const Matrix x3 = Matrix::from_entries(n, n, {c.begin(), c.begin() + nn});
                             const Matrix x4 = Matrix::from_entries(n, n, {c.begin() + nn, c.end()});
                             return det_exact(
                                 skew_commutator_matrix(SliceFamily(2, {Matrix::identity(n), x1, x2, x3, x4})));
                           },
                           {}};
  DegreeAudit audit{n, static_cast<int>(8 * n), static_cast<int>(4 * n), 0};
  audit.measured = degree_along_line(poly, rng.split("line"));
  return audit;
}

DegreeAudit reduced_p1_audit_p3(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw InputError("audit needs n >= 1");
  const int p = 3;
  const auto labels = stage1_labels(qqbar_pattern(p), p);
  const std::size_t nn = n * n;
  PolynomialEvaluator poly{4 * nn, 15 * n,
                           [&](std::span<const Rational> c) {
                             std::vector<Matrix> xs(7, Matrix(n, n));
                             for (std::size_t k = 0; k < 4; ++k)
                               xs[k + 2] = Matrix::from_entries(
                                   n, n, {c.begin() + static_cast<std::ptrdiff_t>(k * nn),
                                          c.begin() + static_cast<std::ptrdiff_t>((k + 1) * nn)});
                             return stage1_product(labels, xs);
                           },
                           {}};
  DegreeAudit audit{n, static_cast<int>(15 * n), static_cast<int>(6 * n), 0};
  audit.measured = degree_along_line(poly, Rng(seed).split("reduced-p1"));
  return audit;
}

}  // namespace koszul
