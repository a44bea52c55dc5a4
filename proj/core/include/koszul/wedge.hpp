#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

std::uint64_t binomial(int n, int k);

// Strictly increasing subset of {0, ..., 2p}.
struct WedgeIndex {
  std::vector<int> elems;

  bool contains(int k) const;
  std::size_t size() const { return elems.size(); }
  std::string to_string() const;

  friend auto operator<=>(const WedgeIndex&, const WedgeIndex&) = default;
};

struct SignedIndex {
  int sign;
  WedgeIndex index;
};

// All subsets of a given cardinality of {0, ..., 2p}, lexicographically
// ordered.
class WedgeBasis {
 public:
  WedgeBasis(int p, int cardinality);

  int p() const { return p_; }
  int cardinality() const { return cardinality_; }
  std::size_t size() const { return order_.size(); }
  const std::vector<WedgeIndex>& order() const { return order_; }
  const WedgeIndex& operator[](std::size_t i) const { return order_[i]; }
  std::optional<std::size_t> index_of(const WedgeIndex& w) const;

  // Subsets containing 0 followed by those that do not, lex inside each part.
  std::vector<WedgeIndex> partitioned() const;
  std::size_t count_containing_zero() const;

 private:
  int p_;
  int cardinality_;
  std::vector<WedgeIndex> order_;
  std::map<WedgeIndex, std::size_t> index_;
};

WedgeBasis wedge_basis(int p, int cardinality);

// a_k ^ (a_j1 ^ ... ^ a_jp) = sign * a_I with I = J + {k} sorted; sign is
// (-1)^(position of k in I). Absent when k is already in J.
std::optional<SignedIndex> insert_sign(int k, const WedgeIndex& j);

// Inverse of insert_sign: removing k from I, with the same sign.
std::optional<SignedIndex> remove_sign(int k, const WedgeIndex& i);

// k when J is contained in I and I \ J = {k}.
std::optional<int> differ_by_one(const WedgeIndex& i, const WedgeIndex& j);

}  // namespace koszul
