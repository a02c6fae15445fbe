#pragma once

#include <string>

#include "tomo/symtensor.hpp"
#include "tomo/tensor_field.hpp"

namespace tomo::oracle {

/// Dense-array references: literal index summation on full n^m arrays,
/// independent of the sorted-tuple algebra they validate. Capped at
/// n <= 4, m <= 4.
std::vector<double> dense_symmetrize(std::span<const double> dense, int n, int m);
std::vector<double> dense_outer(std::span<const double> a, int pa,
                                std::span<const double> b, int pb, int n);
std::vector<double> dense_sym_product(std::span<const double> a, int pa,
                                      std::span<const double> b, int pb, int n);
std::vector<double> dense_i_vec(const Vec& x, std::span<const double> u, int n, int m);
std::vector<double> dense_j_vec(const Vec& x, std::span<const double> u, int n, int m);
double dense_inner(std::span<const double> a, std::span<const double> b);

/// Repeated application of the divergence, literally.
TensorField brute_delta_power(const TensorField& g, int p,
                              double boundary_tol = kBoundaryTol);

/// Exact rational arithmetic for the operator-identity coefficients.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Coefficients c_0..c_ell with div^ell d^ell = sum_i c_i lap^(ell-i) (d div)^i
/// on rank-m fields, by repeated substitution of
/// div d = (1/(m+1)) lap + (m/(m+1)) d div.
std::vector<Rational> delta_d_coefficients(int ell, int m);

struct IdentityCheck {
  std::string name;
  std::string statement;  // human-readable formula
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string configuration;
};

struct IdentityReport {
  std::vector<IdentityCheck> items;
  bool all_pass = false;
  std::string config_summary;
};

struct SuiteConfig {
  std::uint64_t seed = 7;
  double half_extent = 5.0;
  int grid_n = 128;        // algebraic / spectral identities
  int radon_grid_n = 192;  // transform identities
  int directions = 0;      // 0: 2 * radon_grid_n
  bool include_3d = true;
  int grid_n3 = 48;
  int directions_3d = 8;
  double tol_scale = 1.0;  // multiplies every tolerance
};

/// Runs every identity on seeded phantoms; deterministic given the config.
IdentityReport run_identity_suite(const SuiteConfig& config = {});

std::string report_text(const IdentityReport& report);
std::string report_csv(const IdentityReport& report);

}  // namespace tomo::oracle
