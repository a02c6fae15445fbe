#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tomo/oracle.hpp"

using namespace tomo;
using testing::quick_phantom;
using testing::Rng;

namespace {
const Grid kGrid = Grid::centered(2, 128, 5.0);
}

TEST_CASE("dense reference degenerate cases are exact") {
  Rng rng(1);
  // rank 0 and rank 1 pass through symmetrization unchanged
  const auto d0 = rng.dense(3, 0);
  CHECK(oracle::dense_symmetrize(d0, 3, 0) == d0);
  const auto d1 = rng.dense(3, 1);
  CHECK(oracle::dense_symmetrize(d1, 3, 1) == d1);
  CHECK_THROWS_AS(oracle::dense_symmetrize(rng.dense(3, 2), 4, 4), ShapeError);
}

TEST_CASE("dense symmetrize agrees with the sorted-tuple algebra") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.uniform_int(3);
    const int m = rng.uniform_int(5);
    const auto dense = rng.dense(n, m);
    const auto ref = oracle::dense_symmetrize(dense, n, m);
    const SymTensor s = symmetrize(dense, n, m);
    CHECK(testing::max_abs_diff(to_dense(s), ref) < 1e-13);
  }
}

TEST_CASE("j after i minus i after j on random inputs is consistent dense vs sparse") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + rng.uniform_int(3);
    const int m = 1 + rng.uniform_int(2);
    const Vec x = rng.vec(n);
    const SymTensor u = rng.tensor(n, m);
    const SymTensor sparse_ji = j_vec(x, i_vec(x, u));
    const SymTensor sparse_ij = i_vec(x, j_vec(x, u));
    const auto dense_ji = oracle::dense_j_vec(x, oracle::dense_i_vec(x, to_dense(u), n, m), n, m + 1);
    const auto dense_ij = oracle::dense_i_vec(x, oracle::dense_j_vec(x, to_dense(u), n, m), n, m - 1);
    CHECK(testing::max_abs_diff(to_dense(sparse_ji), dense_ji) < 1e-13);
    CHECK(testing::max_abs_diff(to_dense(sparse_ij), dense_ij) < 1e-13);
  }
}

TEST_CASE("brute_delta_power") {
  const TensorField g = gaussian_phantom(quick_phantom(11), kGrid, 2);
  SUBCASE("zero applications is the identity") {
    CHECK(l2_error(oracle::brute_delta_power(g, 0), g) == 0.0);
  }
  SUBCASE("rank underflow rejected") {
    CHECK_THROWS_AS(oracle::brute_delta_power(g, 3), ShapeError);
  }

  SUBCASE("linear-weight product rule") {
    const Vec a{0.28, -0.96};
    for (int k = 1; k <= 2; ++k) {
      const TensorField weighted = multiply_linear_weight(g, a, 1);
      const TensorField lhs = oracle::brute_delta_power(weighted, k, kNoDecayCheck);
      TensorField rhs = contract_power(oracle::brute_delta_power(g, k - 1, kNoDecayCheck), a, 1);
      rhs *= static_cast<double>(k);
      rhs += multiply_linear_weight(oracle::brute_delta_power(g, k, kNoDecayCheck), a, 1);
      CHECK(l2_error(lhs, rhs) < 1e-6);
    }
  }

  SUBCASE("power-weight closed form at p = m") {
    const Vec a{0.6, 0.8};
    for (int m = 2; m <= 3; ++m)
      for (int k = 2; k <= m; ++k) {
        const TensorField f = gaussian_phantom(
            quick_phantom(20 + static_cast<unsigned>(10 * m + k)), kGrid, m);
        const TensorField weighted = multiply_linear_weight(f, a, k);
        const TensorField lhs = oracle::brute_delta_power(weighted, m, kNoDecayCheck);
        TensorField rhs(kGrid, 0);
        for (int i = 0; i < k; ++i) {
          TensorField term = contract_power(
              oracle::brute_delta_power(f, m - (k - i), kNoDecayCheck), a, k - i);
          term *= static_cast<double>(binomial(k, i)) * falling_factorial(m, k - i);
          if (i > 0) term = multiply_linear_weight(term, a, i);
          rhs += term;
        }
        rhs += multiply_linear_weight(oracle::brute_delta_power(f, m, kNoDecayCheck), a, k);
        CHECK(l2_error(lhs, rhs) < 1e-6);
      }
  }
}

TEST_CASE("delta_d_coefficients") {
  SUBCASE("first order values") {
    for (int m = 0; m <= 3; ++m) {
      const auto c = oracle::delta_d_coefficients(1, m);
      REQUIRE(c.size() == 2);
      CHECK(c[0].value() == doctest::Approx(1.0 / (m + 1)));
      CHECK(c[1].value() == doctest::Approx(static_cast<double>(m) / (m + 1)));
    }
    const auto scalar = oracle::delta_d_coefficients(1, 0);
    CHECK(scalar[0].num == 1);
    CHECK(scalar[0].den == 1);
    CHECK(scalar[1].num == 0);
  }

  SUBCASE("second order coefficients satisfy the operator identity") {
    for (int m = 1; m <= 2; ++m) {
      const auto c = oracle::delta_d_coefficients(2, m);
      REQUIRE(c.size() == 3);
      const TensorField v = gaussian_phantom(quick_phantom(40 + static_cast<unsigned>(m)), kGrid, m);
      TensorField lhs = v;
      for (int i = 0; i < 2; ++i) lhs = d_field(lhs);
      for (int i = 0; i < 2; ++i) lhs = div_field(lhs, kNoDecayCheck);
      TensorField rhs(kGrid, m);
      for (int i = 0; i <= 2; ++i) {
        TensorField term = v;
        for (int a = 0; a < i; ++a) term = d_field(div_field(term, kNoDecayCheck), kNoDecayCheck);
        for (int a = 0; a < 2 - i; ++a) term = laplacian_field(term, kNoDecayCheck);
        term *= c[static_cast<std::size_t>(i)].value();
        rhs += term;
      }
      CHECK(l2_error(lhs, rhs) < 1e-6);
    }
  }

  SUBCASE("coefficients sum to one") {
    // d^l div^l on a pure potential with div-free generator collapses to
    // lap^l, so the coefficients must sum to 1 at every rank
    for (int l = 1; l <= 4; ++l)
      for (int m = 0; m <= 3; ++m) {
        const auto c = oracle::delta_d_coefficients(l, m);
        double sum = 0.0;
        for (const auto& r : c) sum += r.value();
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
  }
}

TEST_CASE("identity suite passes at its default 2-d scale") {
  oracle::SuiteConfig cfg;
  cfg.include_3d = false;  // the 3-d block is exercised by the CLI verify default
  const oracle::IdentityReport report = oracle::run_identity_suite(cfg);
  for (const auto& item : report.items) {
    INFO(item.name, " residual ", item.residual, " tol ", item.tolerance);
    CHECK(item.pass);
  }
  CHECK(report.all_pass);
  const std::string csv = oracle::report_csv(report);
  CHECK(csv.rfind("name,statement,residual,tolerance,pass,configuration\n", 0) == 0);
}

TEST_CASE("identity suite is deterministic and fails honestly when tightened") {
  oracle::SuiteConfig small;
  small.grid_n = 64;
  small.radon_grid_n = 96;
  small.include_3d = false;
  small.tol_scale = 1e4;  // keep the small-scale run green
  const oracle::IdentityReport a = oracle::run_identity_suite(small);
  const oracle::IdentityReport b = oracle::run_identity_suite(small);
  CHECK(oracle::report_csv(a) == oracle::report_csv(b));

  oracle::SuiteConfig tight = small;
  tight.tol_scale = 1e-12;
  const oracle::IdentityReport failing = oracle::run_identity_suite(tight);
  CHECK_FALSE(failing.all_pass);
  bool some_failed_with_name = false;
  for (const auto& item : failing.items)
    if (!item.pass && !item.name.empty()) some_failed_with_name = true;
  CHECK(some_failed_with_name);
}
