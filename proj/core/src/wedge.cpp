#include "koszul/wedge.hpp"

#include <algorithm>

#include "koszul/error.hpp"

namespace koszul {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

bool WedgeIndex::contains(int k) const { return std::binary_search(elems.begin(), elems.end(), k); }

std::string WedgeIndex::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(elems[i]);
  }
  return s + "}";
}

WedgeBasis::WedgeBasis(int p, int cardinality) : p_(p), cardinality_(cardinality) {
  if (p < 1) throw InputError("wedge basis needs p >= 1");
  if (cardinality != p && cardinality != p + 1) throw InputError("wedge basis cardinality must be p or p+1");
  const int n = 2 * p + 1;
  std::vector<int> cur(cardinality);
  for (int i = 0; i < cardinality; ++i) cur[i] = i;
  while (true) {
    index_.emplace(WedgeIndex{cur}, order_.size());
    order_.push_back(WedgeIndex{cur});
    int i = cardinality - 1;
    while (i >= 0 && cur[i] == n - cardinality + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < cardinality; ++j) cur[j] = cur[j - 1] + 1;
  }
}

std::optional<std::size_t> WedgeBasis::index_of(const WedgeIndex& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<WedgeIndex> WedgeBasis::partitioned() const {
  std::vector<WedgeIndex> out;
  out.reserve(order_.size());
  for (const auto& w : order_)
    if (w.contains(0)) out.push_back(w);
  for (const auto& w : order_)
    if (!w.contains(0)) out.push_back(w);
  return out;
}

std::size_t WedgeBasis::count_containing_zero() const {
  return static_cast<std::size_t>(binomial(2 * p_, cardinality_ - 1));
}

WedgeBasis wedge_basis(int p, int cardinality) { return WedgeBasis(p, cardinality); }

std::optional<SignedIndex> insert_sign(int k, const WedgeIndex& j) {
  if (j.contains(k)) return std::nullopt;
  const auto pos = std::lower_bound(j.elems.begin(), j.elems.end(), k);
  const auto offset = pos - j.elems.begin();
  WedgeIndex i = j;
  i.elems.insert(i.elems.begin() + offset, k);
  return SignedIndex{offset % 2 == 0 ? 1 : -1, std::move(i)};
}

std::optional<SignedIndex> remove_sign(int k, const WedgeIndex& i) {
  const auto pos = std::lower_bound(i.elems.begin(), i.elems.end(), k);
  if (pos == i.elems.end() || *pos != k) return std::nullopt;
  const auto offset = pos - i.elems.begin();
  WedgeIndex j = i;
  j.elems.erase(j.elems.begin() + offset);
  return SignedIndex{offset % 2 == 0 ? 1 : -1, std::move(j)};
}

std::optional<int> differ_by_one(const WedgeIndex& i, const WedgeIndex& j) {
  if (i.size() != j.size() + 1) return std::nullopt;
  std::optional<int> extra;
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < i.size()) {
    if (b < j.size() && i.elems[a] == j.elems[b]) {
      ++a;
      ++b;
    } else if (b < j.size() && j.elems[b] < i.elems[a]) {
      return std::nullopt;
    } else {
      if (extra) return std::nullopt;
      extra = i.elems[a++];
    }
  }
  if (b != j.size()) return std::nullopt;
  return extra;
}

}  // namespace koszul
