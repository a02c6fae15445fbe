#include "tomo/multi_index.hpp"

#include <numeric>

#include "tomo/common.hpp"

namespace tomo {

int MultiIndex::degree() const {
  return std::accumulate(entries.begin(), entries.end(), 0);
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(entries[i]);
  }
  return s + ")";
}

namespace {

void enumerate(int slots, int degree, std::vector<int>& prefix,
               std::vector<MultiIndex>& out) {
  if (slots == 1) {
    prefix.push_back(degree);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= degree; ++v) {
    prefix.push_back(v);
    enumerate(slots - 1, degree - v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(int slots, int degree) {
  if (slots < 1 || degree < 0) throw ShapeError("multi_indices: bad arguments");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(degree + slots - 1, degree)));
  std::vector<int> prefix;
  enumerate(slots, degree, prefix, out);
  return out;
}

double multinomial(const MultiIndex& ell) {
  double r = factorial(ell.degree());
  for (int e : ell.entries) r /= factorial(e);
  return r;
}

}  // namespace tomo
