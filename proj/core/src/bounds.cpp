#include "koszul/bounds.hpp"

#include <algorithm>
#include <charconv>

#include "koszul/error.hpp"
#include "koszul/flattening.hpp"
#include "koszul/parallel.hpp"
#include "koszul/random.hpp"

namespace koszul {

namespace {

mpz_class binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class ceil_of(const Rational& v) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return r;
}

Rational from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return Rational(z);
}

int parse_p(std::string_view text, std::string_view whole) {
  int p = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || ptr != text.data() + text.size() || p < 1)
    throw InputError("bad bound kind '" + std::string(whole) + "'");
  return p;
}

}  // namespace

BoundKind BoundKind::landsberg(int p) {
  if (p < 1) throw InputError("landsberg bound needs p >= 1");
  return {Tag::landsberg, p};
}

BoundKind BoundKind::mr(int p) {
  if (p < 1) throw InputError("mr bound needs p >= 1");
  return {Tag::mr, p};
}

BoundKind BoundKind::parse(std::string_view text) {
  if (text == "strassen") return strassen();
  if (text == "blaser") return blaser();
  if (text == "mr_p2_refined") return mr_p2_refined();
  if (text == "mr_p3_refined") return mr_p3_refined();
  if (text.starts_with("landsberg:")) return landsberg(parse_p(text.substr(10), text));
  if (text.starts_with("mr:")) return mr(parse_p(text.substr(3), text));
  throw InputError("unknown bound kind '" + std::string(text) + "'");
}

std::string BoundKind::name() const {
  switch (tag) {
    case Tag::strassen:
      return "strassen";
    case Tag::blaser:
      return "blaser";
    case Tag::landsberg:
      return "landsberg:" + std::to_string(p);
    case Tag::mr:
      return "mr:" + std::to_string(p);
    case Tag::mr_p2_refined:
      return "mr_p2_refined";
    case Tag::mr_p3_refined:
      return "mr_p3_refined";
  }
  return "";
}

mpz_class mr_linear_coefficient(int p) {
  if (p < 1) throw InputError("mr bound needs p >= 1");
  return 2 * binom(2 * p, p + 1) - binom(2 * p - 2, p - 1) + 2;
}

BoundReport bound_value(const BoundKind& kind, std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw InputError("bounds need n, m >= 1");
  if (m != n && !kind.allows_rectangular())
    throw InputError("bound '" + kind.name() + "' is defined for m = n only");
  if (kind.parametric() && kind.p < 1) throw InputError("bound '" + kind.name() + "' needs p >= 1");
  const Rational N = from_u64(n);
  const Rational M = from_u64(m);
  Rational v;
  switch (kind.tag) {
    case BoundKind::Tag::strassen:
      v = Rational(3, 2) * N * N;
      break;
    case BoundKind::Tag::blaser:
      v = Rational(5, 2) * N * N - 3 * N;
      break;
    case BoundKind::Tag::landsberg: {
      const int p = kind.p;
      v = (Rational(3) - Rational(1, p + 1)) * N * N - Rational(1 + 2 * p * binom(2 * p, p)) * N;
      break;
    }
    case BoundKind::Tag::mr: {
      const int p = kind.p;
      v = (Rational(1) + Rational(p, p + 1)) * N * M + N * N - Rational(mr_linear_coefficient(p)) * N;
      break;
    }
    case BoundKind::Tag::mr_p2_refined:
      v = Rational(8, 3) * N * N - 7 * N;
      break;
    case BoundKind::Tag::mr_p3_refined:
      v = Rational(11, 4) * N * N - 17 * N;
      break;
  }
  v.canonicalize();
  return {kind, n, m, v, ceil_of(v)};
}

BoundReport bound_value(const BoundKind& kind, std::uint64_t n) { return bound_value(kind, n, n); }

BestMr best_mr(std::uint64_t n) {
  if (n == 0) throw InputError("bounds need n >= 1");
  BestMr best{1, bound_value(BoundKind::mr(1), n)};
  const Rational N = from_u64(n);
  for (std::uint64_t p = 2; p <= n; ++p) {
    // Every mr(p) value is below 3n^2 - c(p) n and c(p) grows with p, so once
    // that ceiling drops under the best value no larger p can win.
    if (3 * N * N - Rational(mr_linear_coefficient(static_cast<int>(p))) * N < best.report.value) break;
    auto r = bound_value(BoundKind::mr(static_cast<int>(p)), n);
    if (r.ceiling > best.report.ceiling) best = {static_cast<int>(p), std::move(r)};
  }
  return best;
}

CrossoverResult crossover(const BoundKind& a, const BoundKind& b, std::uint64_t n_max) {
  CrossoverResult out;
  std::optional<Rational> prev_diff;
  bool monotone = true;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto ra = bound_value(a, n);
    const auto rb = bound_value(b, n);
    const Rational diff = ra.value - rb.value;
    if (!out.first_geq && diff >= 0) out.first_geq = n;
    if (!out.first_strict && diff > 0) out.first_strict = n;
    if (!out.ceiling_first_geq && ra.ceiling >= rb.ceiling) out.ceiling_first_geq = n;
    if (!out.ceiling_first_strict && ra.ceiling > rb.ceiling) out.ceiling_first_strict = n;
    if (out.first_geq) {
      if (prev_diff && diff < *prev_diff) monotone = false;
      prev_diff = diff;
    }
  }
  out.monotone_after = out.first_geq.has_value() && monotone;
  return out;
}

Certificate certify_border_rank(const Tensor3& t, const CertifyOptions& options) {
  const int p = options.p;
  if (p < 1) throw InputError("certify needs p >= 1");
  if (static_cast<std::size_t>(2 * p + 1) > t.dim_a())
    throw DegenerateError("p too large: 2p+1 = " + std::to_string(2 * p + 1) + " exceeds dim A = " +
                          std::to_string(t.dim_a()));
  if (t.dim_b() != t.dim_c()) throw InputError("certify needs square slices (dim B = dim C)");
  if (options.alphas.empty() && options.trials == 0) throw InputError("certify needs at least one trial");

  const auto pattern = build_flattening(p).pattern;
  const std::uint64_t divisor = binomial(2 * p, p);
  const std::size_t trials = options.alphas.empty() ? options.trials : 1;
  const Rng root(options.seed);

  struct Trial {
    bool ok = false;
    std::size_t rank = 0;
    std::vector<Vector> alphas;
  };
  std::vector<Trial> results(trials);
  parallel_for(trials, [&](std::size_t trial) {
    std::vector<Vector> alphas = options.alphas;
    if (alphas.empty()) {
      Rng rng = root.split("certify").split(trial);
      alphas.assign(static_cast<std::size_t>(2 * p + 1), Vector(t.dim_a()));
      for (auto& a : alphas)
        for (auto& x : a) x = static_cast<long>(rng.uniform(-options.entry_bound, options.entry_bound));
    }
    try {
      const auto slices = slice_family(t, alphas);
      results[trial] = {true, rank_exact(assemble(pattern, slices)), std::move(alphas)};
    } catch (const DegenerateError&) {
      results[trial] = {false, 0, std::move(alphas)};
    }
  });

  Certificate cert;
  cert.divisor = divisor;
  cert.seed = options.seed;
  cert.p = p;
  cert.trials = trials;
  bool any = false;
  for (std::size_t i = 0; i < trials; ++i) {
    if (!results[i].ok) continue;
    if (!any || results[i].rank > cert.flattening_rank) {
      cert.flattening_rank = results[i].rank;
      cert.best_trial = i;
      cert.alphas = results[i].alphas;
    }
    any = true;
  }
  if (!any) throw DegenerateError("subspace not (2p+1)-dimensional in every trial");
  cert.bound = (cert.flattening_rank + divisor - 1) / divisor;
  return cert;
}

}  // namespace koszul
