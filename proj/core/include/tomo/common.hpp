#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomo {

/// Small geometric vector in R^n (n = 2..4 throughout this library).
using Vec = std::vector<double>;

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DecayError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long long binomial(int n, int k);
double factorial(int n);

/// m (m-1) ... (m-j+1); the empty product (j = 0) is 1.
double falling_factorial(int m, int j);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec normalized(const Vec& a);
Vec cross(const Vec& a, const Vec& b);  // n = 3 only
Vec scaled(const Vec& a, double s);
Vec axpy(double a, const Vec& x, const Vec& y);  // a*x + y

/// Worker count for data-parallel loops: TOMO_THREADS if set, else
/// hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, count) on up to worker_count() threads.
/// Tasks must write to disjoint state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace tomo
