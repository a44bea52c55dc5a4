#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "koszul/bounds.hpp"
#include "koszul/error.hpp"
#include "koszul/flattening.hpp"
#include "koszul/io.hpp"
#include "koszul/keylemma.hpp"
#include "koszul/random.hpp"
#include "koszul/suites.hpp"
#include "koszul/tensor.hpp"

namespace koszul::cli {

namespace {

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

// Everything a command prints: a JSON document and the same content as
// tables plus free-form notes for the md and csv formats.
struct Output {
  std::string command;
  std::uint64_t seed = 0;
  json doc = json::object();
  std::vector<Table> tables;
  std::vector<std::string> notes;
  int code = ExitCode::ok;
};

Output start(const std::string& command, std::uint64_t seed) {
  Output o;
  o.command = command;
  o.seed = seed;
  return o;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string render(const Output& o, const std::string& format) {
  std::ostringstream s;
  if (format == "json") {
    json doc = o.doc;
    doc["command"] = o.command;
    doc["seed"] = o.seed;
    s << doc.dump(2) << '\n';
    return s.str();
  }
  s << "# koszul-rank " << o.command << " (seed " << o.seed << ")\n";
  for (const auto& t : o.tables) {
    s << '\n';
    if (format == "csv") {
      for (std::size_t i = 0; i < t.headers.size(); ++i) s << (i ? "," : "") << csv_field(t.headers[i]);
      s << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << csv_field(r[i]);
        s << '\n';
      }
    } else {
      s << '|';
      for (const auto& h : t.headers) s << ' ' << h << " |";
      s << "\n|";
      for (std::size_t i = 0; i < t.headers.size(); ++i) s << "---|";
      s << '\n';
      for (const auto& r : t.rows) {
        s << '|';
        for (const auto& c : r) s << ' ' << c << " |";
        s << '\n';
      }
    }
  }
  if (!o.notes.empty()) {
    s << '\n';
    for (const auto& n : o.notes) s << (format == "csv" ? "# " : "") << n << '\n';
  }
  return s.str();
}

std::string str(const mpz_class& z) { return z.get_str(); }

std::string opt_str(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "none"; }

json opt_json(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const BoundReport& r) {
  return {{"kind", r.kind.name()}, {"n", r.n},           {"m", r.m},
          {"p", r.kind.p},         {"value", to_string(r.value)}, {"ceiling", str(r.ceiling)},
          {"vacuous", r.vacuous()}};
}

std::vector<std::string> report_row(const BoundReport& r) {
  return {r.kind.name(),      std::to_string(r.n), std::to_string(r.m),   r.kind.parametric() ? std::to_string(r.kind.p) : "-",
          to_string(r.value), str(r.ceiling),      r.vacuous() ? "yes" : "no"};
}

Output cmd_bounds(std::uint64_t n, std::optional<std::uint64_t> m_opt, int p_max, std::uint64_t seed) {
  if (n == 0) throw InputError("--n must be >= 1");
  if (p_max < 1) throw InputError("--p must be >= 1");
  const std::uint64_t m = m_opt.value_or(n);
  if (m == 0) throw InputError("--m must be >= 1");
  Output o = start("bounds", seed);
  std::vector<BoundKind> kinds;
  if (m == n) {
    kinds.push_back(BoundKind::strassen());
    kinds.push_back(BoundKind::blaser());
    for (int p = 1; p <= p_max; ++p) kinds.push_back(BoundKind::landsberg(p));
  }
  for (int p = 1; p <= p_max; ++p) kinds.push_back(BoundKind::mr(p));
  if (m == n) {
    kinds.push_back(BoundKind::mr_p2_refined());
    kinds.push_back(BoundKind::mr_p3_refined());
  }
  Table t{{"kind", "n", "m", "p", "value", "ceiling", "vacuous"}, {}};
  o.doc["rows"] = json::array();
  for (const auto& k : kinds) {
    const auto r = bound_value(k, n, m);
    t.rows.push_back(report_row(r));
    o.doc["rows"].push_back(report_json(r));
  }
  o.tables.push_back(t);
  if (m == n) {
    const auto best = best_mr(n);
    o.doc["best_mr"] = report_json(best.report);
    o.notes.push_back("best mr over 1 <= p <= n: p = " + std::to_string(best.p) + ", ceiling " +
                      str(best.report.ceiling));
  } else {
    o.notes.push_back("m != n: only the mr(p) bounds are defined");
  }
  return o;
}

Output cmd_crossover(const std::string& a_text, const std::string& b_text, std::uint64_t n_max, std::uint64_t seed) {
  if (n_max == 0) throw InputError("--n-max must be >= 1");
  const auto a = BoundKind::parse(a_text);
  const auto b = BoundKind::parse(b_text);
  const auto c = crossover(a, b, n_max);
  Output o = start("crossover", seed);
  o.doc = {{"a", a.name()},
           {"b", b.name()},
           {"n_max", n_max},
           {"first_geq", opt_json(c.first_geq)},
           {"first_strict", opt_json(c.first_strict)},
           {"ceiling_first_geq", opt_json(c.ceiling_first_geq)},
           {"ceiling_first_strict", opt_json(c.ceiling_first_strict)},
           {"monotone_after", c.monotone_after}};
  o.tables.push_back({{"a", "b", "n_max", "first_geq", "first_strict", "ceiling_first_geq", "ceiling_first_strict",
                       "monotone_after"},
                      {{a.name(), b.name(), std::to_string(n_max), opt_str(c.first_geq), opt_str(c.first_strict),
                        opt_str(c.ceiling_first_geq), opt_str(c.ceiling_first_strict),
                        c.monotone_after ? "yes" : "no"}}});
  const auto is = [](const BoundKind& k, BoundKind::Tag tag, int p) { return k.tag == tag && k.p == p; };
  if ((is(a, BoundKind::Tag::mr, 3) && is(b, BoundKind::Tag::blaser, 0)) ||
      (is(b, BoundKind::Tag::mr, 3) && is(a, BoundKind::Tag::blaser, 0))) {
    const std::string note =
        "note: the closed forms cross at n = 92 (n^2/4 >= 23n); the threshold 132 often quoted for this comparison "
        "is where landsberg:2 overtakes blaser, not mr:3";
    o.notes.push_back(note);
    o.doc["note"] = note;
  }
  return o;
}

std::vector<Matrix> random_slices(int p, std::size_t n, std::uint64_t seed) {
  Rng rng = Rng(seed).split("flatten");
  std::vector<Matrix> x{Matrix::identity(n)};
  for (int k = 1; k <= 2 * p; ++k) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(rng.uniform(-9, 9));
    x.push_back(std::move(m));
  }
  return x;
}

SymbolicBlockMatrix select_part(int p, const std::string& part) {
  if (part == "qqbar") return qqbar_pattern(p);
  if (part == "reference") return reference_pattern(p);
  const auto f = build_flattening(p);
  if (part == "full") return f.pattern;
  const auto parts = partition_blocks(f.pattern, f.layout);
  if (part == "q") return parts.q;
  if (part == "r") return parts.r;
  if (part == "qbar") return parts.qbar;
  if (part == "zero") return parts.zero;
  throw InputError("unknown --part '" + part + "'");
}

std::string cmd_flatten(int p, const std::string& part, bool numeric, std::size_t n, const std::string& slices_file,
                        const std::string& format, std::uint64_t seed) {
  if (p < 1 || p > 6) throw InputError("--p must be in 1..6");
  const auto sym = select_part(p, part);
  if (!numeric) {
    if (format == "json") {
      json rows = json::array();
      for (std::size_t r = 0; r < sym.block_rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < sym.block_cols(); ++c) row.push_back(sym.at(r, c).token());
        rows.push_back(row);
      }
      json doc = {{"command", "flatten"}, {"p", p}, {"part", part}, {"seed", seed}, {"blocks", rows}};
      return doc.dump(2) + "\n";
    }
    return "# koszul-rank flatten p=" + std::to_string(p) + " part=" + part + " (seed " + std::to_string(seed) + ")\n" +
           sym.dump();
  }
  std::vector<Matrix> slices;
  if (!slices_file.empty()) {
    const json j = read_json_file(slices_file);
    if (!j.is_array()) throw InputError("slices file must be a JSON array of matrices");
    for (const auto& m : j) slices.push_back(matrix_from_json(m));
    if (slices.size() != static_cast<std::size_t>(2 * p + 1))
      throw InputError("slices file must hold 2p+1 = " + std::to_string(2 * p + 1) + " matrices");
  } else {
    if (n == 0) throw InputError("--n must be >= 1");
    slices = random_slices(p, n, seed);
  }
  const Matrix value = assemble(sym, slices);
  json doc = {{"command", "flatten"}, {"p", p},       {"part", part}, {"seed", seed},
              {"matrix", matrix_to_json(value)}, {"rank", rank_exact(value)}};
  if (value.is_square()) doc["det"] = to_string(det_exact(value));
  return doc.dump(2) + "\n";
}

std::vector<std::uint64_t> parse_triple(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(part, &used);
      if (used != part.size() || v == 0) throw InputError("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--matmul expects n,l,m with positive integers");
    }
  }
  if (out.size() != 3) throw InputError("--matmul expects n,l,m with positive integers");
  return out;
}

Output cmd_certify(const std::string& tensor_file, const std::string& matmul, const std::string& alphas_file, int p,
                   std::size_t trials, std::uint64_t seed) {
  if (tensor_file.empty() == matmul.empty()) throw InputError("give exactly one of --tensor or --matmul");
  const Tensor3 t = [&] {
    if (!tensor_file.empty()) return tensor_from_json(read_json_file(tensor_file));
    const auto d = parse_triple(matmul);
    return matmul_tensor(d[0], d[1], d[2]);
  }();
  CertifyOptions opts;
  opts.p = p;
  opts.seed = seed;
  opts.trials = trials;
  if (!alphas_file.empty()) {
    const json j = read_json_file(alphas_file);
    if (!j.is_array()) throw InputError("alphas file must be a JSON array of covectors");
    for (const auto& a : j) opts.alphas.push_back(vector_from_json(a));
  }
  const auto cert = certify_border_rank(t, opts);
  Output o = start("certify", seed);
  json alphas = json::array();
  for (const auto& a : cert.alphas) alphas.push_back(vector_to_json(a));
  o.doc = {{"bound", cert.bound},   {"flattening_rank", cert.flattening_rank},
           {"divisor", cert.divisor}, {"p", cert.p},
           {"trials", cert.trials}, {"best_trial", cert.best_trial},
           {"dims", {t.dim_a(), t.dim_b(), t.dim_c()}}, {"alphas", alphas}};
  o.tables.push_back({{"bound", "flattening_rank", "divisor", "p", "trials", "best_trial"},
                      {{std::to_string(cert.bound), std::to_string(cert.flattening_rank), std::to_string(cert.divisor),
                        std::to_string(cert.p), std::to_string(cert.trials), std::to_string(cert.best_trial)}}});
  return o;
}

Output cmd_verify(const std::string& suite, std::size_t n, std::size_t trials, std::uint64_t seed) {
  const auto report = run_suite(suite, {n, seed, trials});
  Output o = start("verify", seed);
  o.doc["suite"] = suite;
  o.doc["n"] = n;
  o.doc["passed"] = report.passed();
  o.doc["checks"] = json::array();
  Table t{{"check", "result", "detail"}, {}};
  for (const auto& c : report.checks) {
    o.doc["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    t.rows.push_back({c.name, c.passed ? "pass" : "FAIL", c.detail});
  }
  o.tables.push_back(t);
  o.notes.push_back(std::string("suite ") + suite + ": " + (report.passed() ? "pass" : "FAIL"));
  o.code = report.passed() ? ExitCode::ok : ExitCode::check_failed;
  return o;
}

json index_array(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto i : v) out.push_back(i);
  return out;
}

Output cmd_keylemma(std::size_t n, int p, const std::string& basis_file, std::uint64_t seed) {
  std::vector<Matrix> basis;
  if (basis_file.empty()) {
    basis = elementary_basis(n);
  } else {
    const json j = read_json_file(basis_file);
    if (!j.is_array()) throw InputError("basis file must be a JSON array of matrices");
    for (const auto& m : j) basis.push_back(matrix_from_json(m));
  }
  const auto w = key_lemma_search(n, p, basis, seed);
  const auto check = validate_witness(w, basis);
  Output o = start("keylemma", seed);
  json alphas = json::array();
  for (const auto& a : w.alphas) alphas.push_back(matrix_to_json(a));
  o.doc = {{"n", n},
           {"p", p},
           {"attempts", w.attempts},
           {"S0", index_array(w.subsets[0])},
           {"S1", index_array(w.subsets[1])},
           {"S2", index_array(w.subsets[2])},
           {"S3", index_array(w.subsets[3])},
           {"complement", index_array(w.complement)},
           {"h_value", w.h},
           {"h_achieved", w.complement.size()},
           {"vacuous", w.h <= 0},
           {"qqbar_det_nonzero", sgn(w.qqbar_det) != 0},
           {"alphas", alphas},
           {"validation",
            {{"independent", check.independent},
             {"alpha0_invertible", check.alpha0_invertible},
             {"qqbar_nonzero", check.qqbar_nonzero},
             {"subset_sizes", check.subset_sizes},
             {"complement_size", check.complement_size}}}};
  o.tables.push_back({{"stage", "size", "indices"}, {}});
  for (std::size_t s = 0; s < 4; ++s) {
    std::string idx;
    for (auto i : w.subsets[s]) idx += (idx.empty() ? "" : " ") + std::to_string(i);
    o.tables.back().rows.push_back({"S" + std::to_string(s), std::to_string(w.subsets[s].size()), idx});
  }
  o.notes.push_back("h_value = " + std::to_string(w.h) + ", complement size = " + std::to_string(w.complement.size()) +
                    (w.h <= 0 ? " (vacuous)" : ""));
  o.notes.push_back(std::string("witness validation: ") + (check.ok() ? "pass" : "FAIL"));
  o.code = check.ok() ? ExitCode::ok : ExitCode::check_failed;
  return o;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul flattenings, rank lower bounds and border-rank certificates", "koszul-rank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "koszul-rank 0.1.0");

  std::uint64_t seed = 0;
  std::string format = "md";
  std::string output;
  const auto add_common = [&](CLI::App* sub, const std::string& default_format) {
    sub->add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"md", "csv", "json"}))
        ->default_str(default_format);
    sub->add_option("--output,-o", output, "Write to this file instead of standard output");
  };

  std::uint64_t n = 0;
  std::optional<std::uint64_t> m;
  int p = 3;
  auto* bounds = app.add_subcommand("bounds", "Table of all lower-bound formulas at n");
  bounds->add_option("--n", n, "Matrix size n")->required();
  bounds->add_option("--m", m, "Second dimension m (mr bounds only)");
  bounds->add_option("--p", p, "Largest p for the parametric bounds")->capture_default_str();
  add_common(bounds, "md");

  std::string kind_a;
  std::string kind_b;
  std::uint64_t n_max = 1000;
  auto* cross = app.add_subcommand("crossover", "First n where bound a reaches bound b");
  cross->add_option("--a", kind_a, "Bound kind a")->required();
  cross->add_option("--b", kind_b, "Bound kind b")->required();
  cross->add_option("--n-max", n_max, "Scan 1..n-max")->capture_default_str();
  add_common(cross, "md");

  int flat_p = 1;
  std::string part = "full";
  bool numeric = false;
  bool dump_symbolic = false;
  std::size_t flat_n = 2;
  std::string slices_file;
  auto* flatten = app.add_subcommand("flatten", "Dump the symbolic or numeric flattening");
  flatten->add_option("--p", flat_p, "p (dim A = 2p+1)")->required();
  flatten->add_option("--part", part, "full, q, r, qbar, zero, qqbar or reference")->capture_default_str();
  flatten->add_flag("--dump-symbolic", dump_symbolic, "Emit block labels (default)");
  flatten->add_flag("--numeric", numeric, "Assemble with integer slices (X_0 = Id unless --slices)");
  flatten->add_option("--n", flat_n, "Slice size for --numeric")->capture_default_str();
  flatten->add_option("--slices", slices_file, "JSON array of 2p+1 matrices for --numeric");
  add_common(flatten, "md");

  std::string tensor_file;
  std::string matmul;
  std::string alphas_file;
  int cert_p = 1;
  std::size_t trials = 3;
  auto* certify = app.add_subcommand("certify", "Border-rank lower bound from the flattening rank");
  certify->add_option("--tensor", tensor_file, "Tensor JSON file");
  certify->add_option("--matmul", matmul, "Use the matrix multiplication tensor n,l,m");
  certify->add_option("--alphas", alphas_file, "JSON array of 2p+1 covectors (single trial)");
  certify->add_option("--p", cert_p, "p (2p+1 <= dim A)")->capture_default_str();
  certify->add_option("--trials", trials, "Random trials")->capture_default_str();
  add_common(certify, "json");

  std::string suite;
  std::size_t verify_n = 3;
  std::size_t verify_trials = 0;
  auto* verify = app.add_subcommand("verify", "Run an identity suite");
  verify->add_option("--suite", suite, "strassen, p2, p3, remark-imp or detlemmas")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", verify_n, "Slice size")->capture_default_str();
  verify->add_option("--trials", verify_trials, "Trials (0 = suite default)")->capture_default_str();
  add_common(verify, "md");

  std::size_t kl_n = 3;
  int kl_p = 1;
  std::string basis_file;
  auto* keylemma = app.add_subcommand("keylemma", "Support-restriction witness for det(QQbar) != 0");
  keylemma->add_option("--n", kl_n, "Matrix size n")->capture_default_str();
  keylemma->add_option("--p", kl_p, "p in {1, 2, 3}")->capture_default_str();
  keylemma->add_option("--basis", basis_file, "JSON array of n^2 matrices (default: elementary matrices)");
  add_common(keylemma, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::input_error;
  }

  const auto pick_format = [&](CLI::App* sub, const std::string& fallback) {
    return sub->count("--format") ? format : fallback;
  };

  try {
    if (*flatten) {
      emit(cmd_flatten(flat_p, part, numeric, flat_n, slices_file, pick_format(flatten, "md"), seed), output, out);
      return ExitCode::ok;
    }
    Output o;
    std::string fmt;
    if (*bounds) {
      o = cmd_bounds(n, m, p, seed);
      fmt = pick_format(bounds, "md");
    } else if (*cross) {
      o = cmd_crossover(kind_a, kind_b, n_max, seed);
      fmt = pick_format(cross, "md");
    } else if (*certify) {
      o = cmd_certify(tensor_file, matmul, alphas_file, cert_p, trials, seed);
      fmt = pick_format(certify, "json");
    } else if (*verify) {
      o = cmd_verify(suite, verify_n, verify_trials, seed);
      fmt = pick_format(verify, "md");
    } else if (*keylemma) {
      o = cmd_keylemma(kl_n, kl_p, basis_file, seed);
      fmt = pick_format(keylemma, "json");
    }
    emit(render(o, fmt), output, out);
    return o.code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::input_error;
  } catch (const DegenerateError& e) {
    err << "degenerate: " << e.what() << '\n';
    return ExitCode::degenerate;
  } catch (const StructureError& e) {
    err << "structure: " << e.what() << '\n';
    return ExitCode::check_failed;
  }
}

}  // namespace koszul::cli
