#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/exact_linalg.hpp"
#include "koszul/tensor.hpp"
#include "koszul/wedge.hpp"

namespace koszul {

// One block of a symbolic block matrix. sign is +1 or -1, or 0 for a nonzero
// label whose sign is unknown (transcriptions that omit signs); zero blocks
// always carry sign 0.
struct BlockLabel {
  enum class Kind { zero, identity, slice, commutator };

  Kind kind = Kind::zero;
  int sign = 0;
  int i = 0;  // slice index, or first commutator index
  int j = 0;  // second commutator index (i < j)

  static BlockLabel zero() { return {}; }
  static BlockLabel identity(int sign = 1) { return {Kind::identity, sign, 0, 0}; }
  static BlockLabel slice(int k, int sign = 1) { return {Kind::slice, sign, k, 0}; }
  // [X_a, X_b]; stored with a < b, swapping flips the sign.
  static BlockLabel commutator(int a, int b, int sign = 1);

  bool is_zero() const { return kind == Kind::zero; }
  bool involves(int index) const;
  BlockLabel negated() const;
  BlockLabel unsigned_label() const;
  bool same_up_to_sign(const BlockLabel& other) const;

  // "+X3", "-X12", "X3_10" style tokens; "I"/"-I" for identity, "." for zero.
  std::string token() const;
  static BlockLabel parse(std::string_view token);

  friend bool operator==(const BlockLabel&, const BlockLabel&) = default;
};

class SymbolicBlockMatrix {
 public:
  SymbolicBlockMatrix() = default;
  SymbolicBlockMatrix(std::size_t block_rows, std::size_t block_cols);

  std::size_t block_rows() const { return rows_; }
  std::size_t block_cols() const { return cols_; }

  const BlockLabel& at(std::size_t r, std::size_t c) const { return labels_.at(r * cols_ + c); }
  // Throws StructureError when the cell already holds a nonzero label.
  void assign(std::size_t r, std::size_t c, const BlockLabel& label);
  void overwrite(std::size_t r, std::size_t c, const BlockLabel& label);

  SymbolicBlockMatrix sub(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  SymbolicBlockMatrix transposed() const;
  SymbolicBlockMatrix unsigned_view() const;
  std::size_t nonzero_count() const;

  // One line per block row, tokens separated by single spaces. parse skips
  // blank lines and lines starting with '#'.
  std::string dump() const;
  static SymbolicBlockMatrix parse(std::string_view text);

  friend bool operator==(const SymbolicBlockMatrix&, const SymbolicBlockMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BlockLabel> labels_;
};

struct CellDifference {
  std::size_t row;
  std::size_t col;
  BlockLabel expected;
  BlockLabel actual;
};

// Cells where the two patterns disagree; with up_to_sign, signs are ignored.
std::vector<CellDifference> compare_patterns(const SymbolicBlockMatrix& expected,
                                             const SymbolicBlockMatrix& actual, bool up_to_sign);

// Rows are the p-subsets of {0..2p}, columns the (p+1)-subsets; both list the
// subsets containing 0 first, lexicographic inside each part.
struct FlatteningLayout {
  int p = 0;
  std::vector<WedgeIndex> row_basis;
  std::vector<WedgeIndex> col_basis;
  std::size_t row_split = 0;  // rows containing 0: binom(2p, p-1) = binom(2p, p+1)
  std::size_t col_split = 0;  // columns containing 0: binom(2p, p)
};

struct Flattening {
  SymbolicBlockMatrix pattern;
  FlatteningLayout layout;
};

FlatteningLayout flattening_layout(int p);

// Block (J, I) = insert_sign(k, J) * (-1)^k * X_k when I \ J = {k}, else 0.
Flattening build_flattening(int p);
Flattening build_flattening(const SliceFamily& slices);

Matrix assemble(const SymbolicBlockMatrix& sym, const SliceFamily& slices);
Matrix assemble(const SymbolicBlockMatrix& sym, const std::vector<Matrix>& slices);

struct BlockPartition {
  SymbolicBlockMatrix q;     // binom(2p,p+1) x binom(2p,p) blocks
  SymbolicBlockMatrix zero;  // binom(2p,p+1) x binom(2p,p+1) blocks
  SymbolicBlockMatrix r;     // binom(2p,p) x binom(2p,p) blocks
  SymbolicBlockMatrix qbar;  // binom(2p,p) x binom(2p,p+1) blocks
};

// Throws StructureError("layout mismatch") unless the upper-right part is
// zero, R is +-diag(X_0) and Q, Qbar only use X_1..X_2p.
BlockPartition partition_blocks(const SymbolicBlockMatrix& sym, const FlatteningLayout& layout);

// Q-bar rebuilt from Q alone: its l-th block column is the l-th block row of Q
// counted from the bottom, read right to left, with odd-index slices negated.
SymbolicBlockMatrix mirror_qbar(const SymbolicBlockMatrix& q);

// Schur complement -Q * Qbar of the flattening with R = Id, as commutator
// labels. Throws StructureError("structure violation") if a cell is not a
// single signed commutator.
SymbolicBlockMatrix qqbar_pattern(int p);

struct QQbar {
  SymbolicBlockMatrix pattern;
  Matrix value;
};

// Requires X_0 = Id (InputError "normalize first").
QQbar qqbar(const SliceFamily& slices);

// X_i <- X_0^{-1} X_i, X_0 <- Id. DegenerateError when X_0 is singular.
SliceFamily normalize(const SliceFamily& slices);

struct ClaimResult {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct StructureReport {
  int p = 0;
  std::vector<ClaimResult> claims;
  bool ok() const;
};

// Claims on the qqbar pattern, for 1 <= p <= 5:
//   lower-left: rows/cols of the last binom(2p-2,p-1) block rows and first
//     block columns form +-diag([X1,X2]);
//   diagonal-repeats: every diagonal label occurs at least twice on the diagonal;
//   index-exclusion (p >= 3): no diagonal label involves 1 or 2p;
//   all-indices (p = 2): every index 1..4 occurs on the diagonal.
StructureReport check_structure(int p);

// Transcriptions of printed block matrices: p=1 in the other orientation
// (rows 2-subsets, columns 1-subsets), p=2 the 10x10 flattening, p=3 the
// 15x15 qqbar pattern without signs.
SymbolicBlockMatrix reference_pattern(int p);

// The printed 4x4 commutator matrix for p=2 (with signs).
SymbolicBlockMatrix reference_commutator_pattern();

}  // namespace koszul
