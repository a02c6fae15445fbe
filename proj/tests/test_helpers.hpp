#pragma once

#include <random>

#include "tomo/phantom.hpp"
#include "tomo/symtensor.hpp"

namespace tomo::testing {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }

  Vec vec(int n, double lo = -1.0, double hi = 1.0) {
    Vec v(static_cast<std::size_t>(n));
    for (double& x : v) x = uniform(lo, hi);
    return v;
  }

  Vec unit(int n) {
    Vec v = vec(n);
    while (norm(v) < 1e-3) v = vec(n);
    return normalized(v);
  }

  SymTensor tensor(int n, int m) {
    SymTensor t(n, m);
    for (int i = 0; i < t.size(); ++i) t[i] = uniform(-1.0, 1.0);
    return t;
  }

  std::vector<double> dense(int n, int m) {
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
    std::vector<double> d(total);
    for (double& x : d) x = uniform(-1.0, 1.0);
    return d;
  }
};

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline PhantomSpec quick_phantom(std::uint64_t seed,
                                 PhantomSpec::Target target = PhantomSpec::Target::raw) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.target = target;
  spec.center_radius = 1.0;
  spec.width_min = 0.30;
  spec.width_max = 0.40;
  return spec;
}

}  // namespace tomo::testing
