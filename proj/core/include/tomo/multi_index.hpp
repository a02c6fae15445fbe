#pragma once

#include <string>
#include <vector>

namespace tomo {

/// A tuple of non-negative integers (l_1, ..., l_s); the degree is the sum.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) {}

  int slots() const { return static_cast<int>(entries.size()); }
  int degree() const;
  int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }
  bool operator==(const MultiIndex&) const = default;

  std::string str() const;  // "(l1,l2,...)"
};

/// All multi-indices with the given slot count and degree, in ascending
/// lexicographic order. The order is the enumeration contract used by
/// datasets and file layouts.
std::vector<MultiIndex> multi_indices(int slots, int degree);

/// Multinomial degree!/(l1! l2! ...).
double multinomial(const MultiIndex& ell);

}  // namespace tomo
