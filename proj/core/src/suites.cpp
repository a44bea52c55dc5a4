#include "koszul/suites.hpp"

#include <algorithm>

#include "koszul/error.hpp"
#include "koszul/flattening.hpp"
#include "koszul/random.hpp"

namespace koszul {

namespace {

Matrix random_block(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rng.uniform(-9, 9));
  return m;
}

SliceFamily random_normalized(int p, std::size_t n, Rng& rng) {
  std::vector<Matrix> x{Matrix::identity(n)};
  for (int k = 1; k <= 2 * p; ++k) x.push_back(random_block(n, n, rng));
  return SliceFamily(p, std::move(x));
}

Rational abs_value(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

CheckResult det_factorization(const std::string& name, int p, std::size_t n, std::size_t trials, const Rng& root,
                              const SymbolicBlockMatrix& reduced) {
  const auto flat = build_flattening(p).pattern;
  std::size_t agree = 0;
  std::size_t zero = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    const auto slices = random_normalized(p, n, rng);
    const Rational big = det_exact(assemble(flat, slices));
    const Rational small = det_exact(assemble(reduced, slices));
    if (abs_value(big) == abs_value(small)) {
      ++agree;
      if (sgn(big) == 0) ++zero;
    } else if (first_failure.empty()) {
      first_failure = "; trial " + std::to_string(t) + ": " + to_string(big) + " vs " + to_string(small);
    }
  }
  std::string detail = std::to_string(agree) + "/" + std::to_string(trials) + " trials agree at n=" + std::to_string(n);
  if (zero == trials && trials > 0) detail += " (both sides identically zero)";
  return {name, agree == trials, detail + first_failure};
}

void append_structure(SuiteReport& report, int p) {
  const auto s = check_structure(p);
  for (const auto& c : s.claims) report.checks.push_back({"p" + std::to_string(p) + "." + c.name, c.holds, c.detail});
}

SuiteReport strassen_suite(const SuiteOptions& o) {
  SuiteReport r{"strassen", o.seed, {}};
  const Rng root = Rng(o.seed).split("strassen");
  SymbolicBlockMatrix comm(1, 1);
  comm.overwrite(0, 0, BlockLabel::commutator(1, 2));
  r.checks.push_back(det_factorization("det-flattening-equals-det-commutator", 1, o.n, o.trials ? o.trials : 30, root, comm));
  return r;
}

SuiteReport p2_suite(const SuiteOptions& o) {
  SuiteReport r{"p2", o.seed, {}};
  const auto printed = reference_commutator_pattern();
  const auto diffs = compare_patterns(printed, qqbar_pattern(2), false);
  r.checks.push_back({"qqbar-pattern-matches-printed", diffs.empty(),
                      diffs.empty() ? "4x4 commutator pattern identical including signs"
                                    : std::to_string(diffs.size()) + " cells differ"});
  const Rng root = Rng(o.seed).split("p2");
  r.checks.push_back(det_factorization("det-flattening-equals-det-commutator-matrix", 2, o.n, o.trials ? o.trials : 10,
                                       root, printed));
  return r;
}

SuiteReport p3_suite(const SuiteOptions& o) {
  SuiteReport r{"p3", o.seed, {}};
  const Rng root = Rng(o.seed).split("p3");
  r.checks.push_back(
      det_factorization("det-flattening-equals-det-qqbar", 3, o.n, o.trials ? o.trials : 3, root, qqbar_pattern(3)));
  append_structure(r, 3);
  return r;
}

SuiteReport remark_suite(const SuiteOptions& o) {
  SuiteReport r{"remark-imp", o.seed, {}};
  for (int p = 2; p <= 4; ++p) append_structure(r, p);
  return r;
}

SuiteReport detlemma_suite(const SuiteOptions& o) {
  SuiteReport r{"detlemmas", o.seed, {}};
  const std::size_t trials = o.trials ? o.trials : 50;
  const Rng root = Rng(o.seed).split("detlemmas");
  std::size_t schur_ok = 0;
  std::size_t update_ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto m = static_cast<std::size_t>(rng.uniform(1, 4));
    Matrix x = random_block(n, n, rng);
    while (sgn(det_exact(x)) == 0) x = random_block(n, n, rng);
    const Matrix y = random_block(n, m, rng);
    const Matrix z = random_block(m, n, rng);
    const Matrix w = random_block(m, m, rng);
    if (schur_block_det(x, y, z, w) == det_exact(assemble_2x2(x, y, z, w))) ++schur_ok;

    Matrix a = random_block(n, n, rng);
    while (sgn(det_exact(a)) == 0) a = random_block(n, n, rng);
    const Matrix u = random_block(n, m, rng);
    const Matrix v = random_block(n, m, rng);
    if (det_rank_update(a, u, v) == det_exact(a + u * transpose(v))) ++update_ok;
  }
  r.checks.push_back({"block-determinant", schur_ok == trials,
                      std::to_string(schur_ok) + "/" + std::to_string(trials) + " instances, n, m <= 4"});
  r.checks.push_back({"rank-update-determinant", update_ok == trials,
                      std::to_string(update_ok) + "/" + std::to_string(trials) + " instances, n, m <= 4"});
  return r;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> suite_names() { return {"strassen", "p2", "p3", "remark-imp", "detlemmas"}; }

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  if (options.n == 0) throw InputError("suite needs n >= 1");
  if (name == "strassen") return strassen_suite(options);
  if (name == "p2") return p2_suite(options);
  if (name == "p3") return p3_suite(options);
  if (name == "remark-imp") return remark_suite(options);
  if (name == "detlemmas") return detlemma_suite(options);
  throw InputError("unknown suite '" + std::string(name) + "'");
}

}  // namespace koszul
