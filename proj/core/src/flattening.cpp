#include "koszul/flattening.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "koszul/error.hpp"

namespace koszul {

namespace {

std::string index_pair(int a, int b) {
  if (a < 10 && b < 10) return std::to_string(a) + std::to_string(b);
  return std::to_string(a) + "_" + std::to_string(b);
}

int parse_index(std::string_view s, std::string_view token) {
  if (s.empty() || s.size() > 4 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw InputError("bad block token '" + std::string(token) + "'");
  return std::stoi(std::string(s));
}

}  // namespace

BlockLabel BlockLabel::commutator(int a, int b, int sign) {
  if (a == b) throw InputError("commutator of a slice with itself");
  if (a > b) return {Kind::commutator, -sign, b, a};
  return {Kind::commutator, sign, a, b};
}

bool BlockLabel::involves(int index) const {
  switch (kind) {
    case Kind::slice:
      return i == index;
    case Kind::commutator:
      return i == index || j == index;
    default:
      return false;
  }
}

BlockLabel BlockLabel::negated() const {
  BlockLabel out = *this;
  out.sign = -sign;
  return out;
}

BlockLabel BlockLabel::unsigned_label() const {
  BlockLabel out = *this;
  out.sign = 0;
  return out;
}

bool BlockLabel::same_up_to_sign(const BlockLabel& other) const {
  return unsigned_label() == other.unsigned_label();
}

std::string BlockLabel::token() const {
  const std::string s = sign > 0 ? "+" : sign < 0 ? "-" : "";
  switch (kind) {
    case Kind::zero:
      return ".";
    case Kind::identity:
      return sign < 0 ? "-I" : "I";
    case Kind::slice:
      return s + (i < 10 ? "X" + std::to_string(i) : "X_" + std::to_string(i));
    case Kind::commutator:
      return s + "X" + index_pair(i, j);
  }
  return ".";
}

BlockLabel BlockLabel::parse(std::string_view token) {
  const std::string_view whole = token;
  if (token == "." || token == "0") return zero();
  int sign = 0;
  if (!token.empty() && (token.front() == '+' || token.front() == '-')) {
    sign = token.front() == '+' ? 1 : -1;
    token.remove_prefix(1);
  }
  if (token == "I") return identity(sign == 0 ? 1 : sign);
  if (token.size() < 2 || token.front() != 'X') throw InputError("bad block token '" + std::string(whole) + "'");
  token.remove_prefix(1);
  if (token.front() == '_') return slice(parse_index(token.substr(1), whole), sign);
  if (const auto us = token.find('_'); us != std::string_view::npos) {
    const int a = parse_index(token.substr(0, us), whole);
    const int b = parse_index(token.substr(us + 1), whole);
    if (a >= b) throw InputError("bad block token '" + std::string(whole) + "'");
    return {Kind::commutator, sign, a, b};
  }
  if (token.size() == 1) return slice(parse_index(token, whole), sign);
  if (token.size() == 2) {
    const int a = token[0] - '0';
    const int b = token[1] - '0';
    parse_index(token, whole);
    if (a >= b) throw InputError("bad block token '" + std::string(whole) + "'");
    return {Kind::commutator, sign, a, b};
  }
  throw InputError("bad block token '" + std::string(whole) + "'");
}

SymbolicBlockMatrix::SymbolicBlockMatrix(std::size_t block_rows, std::size_t block_cols)
    : rows_(block_rows), cols_(block_cols), labels_(block_rows * block_cols) {}

void SymbolicBlockMatrix::assign(std::size_t r, std::size_t c, const BlockLabel& label) {
  auto& cell = labels_.at(r * cols_ + c);
  if (!cell.is_zero()) throw StructureError("two labels assigned to one cell");
  cell = label;
}

void SymbolicBlockMatrix::overwrite(std::size_t r, std::size_t c, const BlockLabel& label) {
  labels_.at(r * cols_ + c) = label;
}

SymbolicBlockMatrix SymbolicBlockMatrix::sub(std::size_t r0, std::size_t c0, std::size_t rows,
                                             std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw InputError("block range out of bounds");
  SymbolicBlockMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.overwrite(r, c, at(r0 + r, c0 + c));
  return out;
}

SymbolicBlockMatrix SymbolicBlockMatrix::transposed() const {
  SymbolicBlockMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.overwrite(c, r, at(r, c));
  return out;
}

SymbolicBlockMatrix SymbolicBlockMatrix::unsigned_view() const {
  SymbolicBlockMatrix out = *this;
  for (auto& l : out.labels_) l = l.unsigned_label();
  return out;
}

std::size_t SymbolicBlockMatrix::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(), [](const BlockLabel& l) { return !l.is_zero(); }));
}

std::string SymbolicBlockMatrix::dump() const {
  std::string out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += ' ';
      out += at(r, c).token();
    }
    out += '\n';
  }
  return out;
}

SymbolicBlockMatrix SymbolicBlockMatrix::parse(std::string_view text) {
  std::vector<std::vector<BlockLabel>> grid;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    std::istringstream words(line);
    std::vector<BlockLabel> row;
    std::string tok;
    while (words >> tok) row.push_back(BlockLabel::parse(tok));
    if (!row.empty()) grid.push_back(std::move(row));
  }
  if (grid.empty()) return {};
  SymbolicBlockMatrix out(grid.size(), grid.front().size());
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (grid[r].size() != out.cols_) throw InputError("ragged block pattern");
    for (std::size_t c = 0; c < out.cols_; ++c) out.overwrite(r, c, grid[r][c]);
  }
  return out;
}

std::vector<CellDifference> compare_patterns(const SymbolicBlockMatrix& expected,
                                             const SymbolicBlockMatrix& actual, bool up_to_sign) {
  if (expected.block_rows() != actual.block_rows() || expected.block_cols() != actual.block_cols())
    throw InputError("patterns have different block shapes");
  std::vector<CellDifference> out;
  for (std::size_t r = 0; r < expected.block_rows(); ++r)
    for (std::size_t c = 0; c < expected.block_cols(); ++c) {
      const auto& e = expected.at(r, c);
      const auto& a = actual.at(r, c);
      if (up_to_sign ? !e.same_up_to_sign(a) : !(e == a)) out.push_back({r, c, e, a});
    }
  return out;
}

FlatteningLayout flattening_layout(int p) {
  FlatteningLayout layout;
  layout.p = p;
  const WedgeBasis rows(p, p);
  const WedgeBasis cols(p, p + 1);
  layout.row_basis = rows.partitioned();
  layout.col_basis = cols.partitioned();
  layout.row_split = rows.count_containing_zero();
  layout.col_split = cols.count_containing_zero();
  return layout;
}

Flattening build_flattening(int p) {
  Flattening f{{}, flattening_layout(p)};
  const auto& rows = f.layout.row_basis;
  const auto& cols = f.layout.col_basis;
  f.pattern = SymbolicBlockMatrix(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto k = differ_by_one(cols[c], rows[r]);
      if (!k) continue;
      const auto ins = insert_sign(*k, rows[r]);
      const int sign = ins->sign * (*k % 2 == 0 ? 1 : -1);
      f.pattern.assign(r, c, BlockLabel::slice(*k, sign));
    }
  return f;
}

Flattening build_flattening(const SliceFamily& slices) {
  if (slices.rows() != slices.cols()) throw InputError("flattening needs square slices");
  return build_flattening(slices.p());
}

Matrix assemble(const SymbolicBlockMatrix& sym, const std::vector<Matrix>& slices) {
  if (slices.empty()) throw InputError("assemble: no slices");
  const std::size_t n = slices.front().rows();
  for (const auto& s : slices)
    if (s.rows() != n || s.cols() != n) throw InputError("assemble: slices must be square of one size");
  auto get = [&](int k) -> const Matrix& {
    if (k < 0 || static_cast<std::size_t>(k) >= slices.size())
      throw InputError("assemble: missing slice X" + std::to_string(k));
    return slices[static_cast<std::size_t>(k)];
  };
  Matrix out(sym.block_rows() * n, sym.block_cols() * n);
  for (std::size_t r = 0; r < sym.block_rows(); ++r)
    for (std::size_t c = 0; c < sym.block_cols(); ++c) {
      const auto& l = sym.at(r, c);
      const int sign = l.sign < 0 ? -1 : 1;
      Matrix block;
      switch (l.kind) {
        case BlockLabel::Kind::zero:
          continue;
        case BlockLabel::Kind::identity:
          block = Matrix::identity(n);
          break;
        case BlockLabel::Kind::slice:
          block = get(l.i);
          break;
        case BlockLabel::Kind::commutator:
          block = commutator(get(l.i), get(l.j));
          break;
      }
      if (sign < 0) block = -block;
      out.set_block(r * n, c * n, block);
    }
  return out;
}

Matrix assemble(const SymbolicBlockMatrix& sym, const SliceFamily& slices) {
  return assemble(sym, slices.slices());
}

BlockPartition partition_blocks(const SymbolicBlockMatrix& sym, const FlatteningLayout& layout) {
  const std::size_t rs = layout.row_split;
  const std::size_t cs = layout.col_split;
  if (sym.block_rows() != layout.row_basis.size() || sym.block_cols() != layout.col_basis.size())
    throw StructureError("layout mismatch");
  BlockPartition out;
  out.q = sym.sub(0, 0, rs, cs);
  out.zero = sym.sub(0, cs, rs, sym.block_cols() - cs);
  out.r = sym.sub(rs, 0, sym.block_rows() - rs, cs);
  out.qbar = sym.sub(rs, cs, sym.block_rows() - rs, sym.block_cols() - cs);
  if (out.zero.nonzero_count() != 0) throw StructureError("layout mismatch");
  if (out.r.block_rows() != out.r.block_cols()) throw StructureError("layout mismatch");
  std::set<int> r_signs;
  for (std::size_t i = 0; i < out.r.block_rows(); ++i)
    for (std::size_t j = 0; j < out.r.block_cols(); ++j) {
      const auto& l = out.r.at(i, j);
      if (i == j) {
        if (l.kind != BlockLabel::Kind::slice || l.i != 0) throw StructureError("layout mismatch");
        r_signs.insert(l.sign);
      } else if (!l.is_zero()) {
        throw StructureError("layout mismatch");
      }
    }
  if (r_signs.size() > 1) throw StructureError("layout mismatch");
  for (const auto* part : {&out.q, &out.qbar})
    for (std::size_t i = 0; i < part->block_rows(); ++i)
      for (std::size_t j = 0; j < part->block_cols(); ++j) {
        const auto& l = part->at(i, j);
        if (!l.is_zero() && (l.kind != BlockLabel::Kind::slice || l.i == 0))
          throw StructureError("layout mismatch");
      }
  return out;
}

SymbolicBlockMatrix mirror_qbar(const SymbolicBlockMatrix& q) {
  const std::size_t qr = q.block_rows();
  const std::size_t qc = q.block_cols();
  SymbolicBlockMatrix out(qc, qr);
  for (std::size_t l = 0; l < qr; ++l)
    for (std::size_t r = 0; r < qc; ++r) {
      BlockLabel label = q.at(qr - 1 - l, qc - 1 - r);
      if (label.kind == BlockLabel::Kind::slice && label.i % 2 == 1) label = label.negated();
      out.overwrite(r, l, label);
    }
  return out;
}

SymbolicBlockMatrix qqbar_pattern(int p) {
  const auto f = build_flattening(p);
  const auto parts = partition_blocks(f.pattern, f.layout);
  const std::size_t q = parts.q.block_rows();
  const std::size_t inner = parts.q.block_cols();
  SymbolicBlockMatrix out(q, parts.qbar.block_cols());
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < out.block_cols(); ++j) {
      // coefficient of the ordered product X_a X_b
      std::map<std::pair<int, int>, int> coeff;
      for (std::size_t l = 0; l < inner; ++l) {
        const auto& a = parts.q.at(i, l);
        const auto& b = parts.qbar.at(l, j);
        if (a.is_zero() || b.is_zero()) continue;
        coeff[{a.i, b.i}] -= a.sign * b.sign;
      }
      std::optional<BlockLabel> cell;
      for (const auto& [ab, c] : coeff) {
        if (c == 0) continue;
        const auto [a, b] = ab;
        const auto rev = coeff.find({b, a});
        const int c_rev = rev == coeff.end() ? 0 : rev->second;
        if (a == b || c_rev != -c || (c != 1 && c != -1)) throw StructureError("structure violation");
        if (a > b) continue;
        if (cell) throw StructureError("structure violation");
        cell = BlockLabel::commutator(a, b, c);
      }
      if (cell) out.overwrite(i, j, *cell);
    }
  return out;
}

SliceFamily normalize(const SliceFamily& slices) {
  if (slices.rows() != slices.cols()) throw InputError("normalize needs square slices");
  const Matrix inv = inverse(slices[0]);
  std::vector<Matrix> out;
  out.reserve(slices.size());
  out.push_back(Matrix::identity(slices.rows()));
  for (std::size_t k = 1; k < slices.size(); ++k) out.push_back(inv * slices[k]);
  return SliceFamily(slices.p(), std::move(out));
}

QQbar qqbar(const SliceFamily& slices) {
  if (slices.rows() != slices.cols() || !slices[0].is_identity()) throw InputError("normalize first");
  QQbar out{qqbar_pattern(slices.p()), {}};
  out.value = assemble(out.pattern, slices);
  return out;
}

bool StructureReport::ok() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.holds; });
}

StructureReport check_structure(int p) {
  if (p < 1 || p > 5) throw InputError("check_structure supports 1 <= p <= 5");
  const auto pat = qqbar_pattern(p);
  const std::size_t q = pat.block_rows();
  const std::size_t m = static_cast<std::size_t>(binomial(2 * p - 2, p - 1));
  StructureReport report;
  report.p = p;

  {
    ClaimResult c{"lower-left", true, ""};
    for (std::size_t i = 0; i < m && c.holds; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto& l = pat.at(q - m + i, j);
        const bool good = i == j ? (l.kind == BlockLabel::Kind::commutator && l.i == 1 && l.j == 2) : l.is_zero();
        if (!good) {
          c.holds = false;
          c.detail = "cell (" + std::to_string(q - m + i + 1) + "," + std::to_string(j + 1) + ") is " + l.token();
          break;
        }
      }
    if (c.holds) c.detail = "diag([X1,X2]) of block-count " + std::to_string(m);
    report.claims.push_back(c);
  }

  std::map<std::pair<int, int>, int> diag;
  std::vector<std::pair<std::size_t, BlockLabel>> diag_cells;
  for (std::size_t i = 0; i < q; ++i) {
    const auto& l = pat.at(i, i);
    if (l.is_zero()) continue;
    ++diag[{l.i, l.j}];
    diag_cells.emplace_back(i, l);
  }

  {
    ClaimResult c{"diagonal-repeats", true, ""};
    for (const auto& [ij, count] : diag)
      if (count < 2) {
        c.holds = false;
        c.detail += (c.detail.empty() ? "" : ", ") + BlockLabel::commutator(ij.first, ij.second, 0).token() +
                    " occurs once";
      }
    if (c.holds) {
      for (const auto& [ij, count] : diag)
        c.detail += (c.detail.empty() ? "" : ", ") + BlockLabel::commutator(ij.first, ij.second, 0).token() +
                    " x" + std::to_string(count);
    }
    report.claims.push_back(c);
  }

  if (p >= 3) {
    ClaimResult c{"index-exclusion", true, ""};
    for (const auto& [i, l] : diag_cells)
      if (l.involves(1) || l.involves(2 * p)) {
        c.holds = false;
        c.detail += (c.detail.empty() ? "" : ", ") + l.unsigned_label().token() + " at diagonal block " +
                    std::to_string(i + 1);
      }
    if (c.holds) c.detail = "no diagonal label involves 1 or " + std::to_string(2 * p);
    report.claims.push_back(c);
  }

  if (p == 2) {
    ClaimResult c{"all-indices", true, ""};
    std::set<int> seen;
    for (const auto& [ij, count] : diag) {
      seen.insert(ij.first);
      seen.insert(ij.second);
    }
    for (int k = 1; k <= 2 * p; ++k)
      if (!seen.count(k)) {
        c.holds = false;
        c.detail += (c.detail.empty() ? "missing " : ", ") + std::to_string(k);
      }
    if (c.holds) c.detail = "indices 1..4 all on the diagonal";
    report.claims.push_back(c);
  }
  return report;
}

namespace {

constexpr std::string_view kReferenceP1 =
    "+X1 -X0 .\n"
    "-X2 . +X0\n"
    ". -X2 -X1\n";

constexpr std::string_view kReferenceP2 =
    "+X2 -X3 +X4 . . . . . . .\n"
    "+X1 . . -X3 +X4 . . . . .\n"
    ". +X1 . -X2 . +X4 . . . .\n"
    ". . +X1 . -X2 +X3 . . . .\n"
    "+X0 . . . . . -X3 +X4 . .\n"
    ". +X0 . . . . -X2 . +X4 .\n"
    ". . +X0 . . . . -X2 +X3 .\n"
    ". . . +X0 . . -X1 . . +X4\n"
    ". . . . +X0 . . -X1 . +X3\n"
    ". . . . . +X0 . . -X1 +X2\n";

constexpr std::string_view kReferenceP3 =
    "X34 X35 X36 X45 X46 X56 . . . . . . . . .\n"
    "X24 X25 X26 . . . X45 X46 X56 . . . . . .\n"
    "X23 . . X25 X26 . X34 X35 . X56 . . . . .\n"
    ". X23 . X24 . X26 X34 . X36 X46 . . . . .\n"
    ". . X23 . X24 X25 . X34 X35 X45 . . . . .\n"
    "X14 X15 X16 . . . . . . . X45 X46 X56 . .\n"
    "X13 . . X15 X16 . . . . . X35 X36 . X56 .\n"
    ". X13 . X14 . X16 . . . . X34 . X36 X46 .\n"
    ". . X13 . X14 X15 . . . . . X34 X35 X45 .\n"
    "X12 . . . . . X15 X16 . . X25 X26 . . X56\n"
    ". X12 . . . . X14 . X16 . X24 . X26 . X46\n"
    ". . X12 . . . . X14 X15 . . X24 X25 . X45\n"
    ". . . X12 . . X13 . . X16 X23 . . X26 X36\n"
    ". . . . X12 . . X13 . X15 . X23 . X25 X35\n"
    ". . . . . X12 . . X13 X14 . . X23 X24 X34\n";

constexpr std::string_view kReferenceCommutatorP2 =
    "+X23 -X24 +X34 .\n"
    "+X13 -X14 . +X34\n"
    "+X12 . -X14 +X24\n"
    ". +X12 -X13 +X23\n";

}  // namespace

SymbolicBlockMatrix reference_pattern(int p) {
  switch (p) {
    case 1:
      return SymbolicBlockMatrix::parse(kReferenceP1);
    case 2:
      return SymbolicBlockMatrix::parse(kReferenceP2);
    case 3:
      return SymbolicBlockMatrix::parse(kReferenceP3);
    default:
      throw InputError("reference patterns exist for p in {1,2,3} only");
  }
}

SymbolicBlockMatrix reference_commutator_pattern() { return SymbolicBlockMatrix::parse(kReferenceCommutatorP2); }

}  // namespace koszul
