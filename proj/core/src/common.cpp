#include "tomo/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace tomo {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double falling_factorial(int m, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= (m - i);
  return r;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ShapeError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
  const double n = norm(a);
  if (n == 0.0) throw ShapeError("normalized: zero vector");
  return scaled(a, 1.0 / n);
}

Vec cross(const Vec& a, const Vec& b) {
  if (a.size() != 3 || b.size() != 3) throw ShapeError("cross: n = 3 only");
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec scaled(const Vec& a, double s) {
  Vec r = a;
  for (double& x : r) x *= s;
  return r;
}

Vec axpy(double a, const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw ShapeError("axpy: dimension mismatch");
  Vec r = y;
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += a * x[i];
  return r;
}

int worker_count() {
  if (const char* env = std::getenv("TOMO_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tomo
