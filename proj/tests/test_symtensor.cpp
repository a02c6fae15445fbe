#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "test_helpers.hpp"
#include "tomo/frame.hpp"
#include "tomo/oracle.hpp"
#include "tomo/symtensor.hpp"

using namespace tomo;
using testing::Rng;

TEST_CASE("sym_dim counts sorted tuples") {
  CHECK(sym_dim(3, 2) == 6);
  CHECK(sym_dim(2, 0) == 1);
  CHECK(sym_dim(3, 3) == 10);
  // enumeration length equals the closed form
  for (int n = 1; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m)
      CHECK(static_cast<int>(sym_index_table(n, m).tuples.size()) == sym_dim(n, m));
}

TEST_CASE("multi-index enumeration is lexicographic and complete") {
  const auto idx = multi_indices(2, 2);
  REQUIRE(idx.size() == 3);
  CHECK(idx[0].entries == std::vector<int>{0, 2});
  CHECK(idx[1].entries == std::vector<int>{1, 1});
  CHECK(idx[2].entries == std::vector<int>{2, 0});
  CHECK(multi_indices(3, 2).size() == static_cast<std::size_t>(binomial(4, 2)));
}

TEST_CASE("symmetrize averages over permutations") {
  // n=2, m=2, dense entry (0,1) = 1
  std::vector<double> dense(4, 0.0);
  dense[0 * 2 + 1] = 1.0;
  const SymTensor s = symmetrize(dense, 2, 2);
  CHECK(s.coeff(std::array{0, 1}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.coeff(std::array{0, 0}) == 0.0);
  CHECK(s.coeff(std::array{1, 1}) == 0.0);

  // n=2, m=3, dense entry (0,0,1) = 6 -> coeff 2
  std::vector<double> dense3(8, 0.0);
  dense3[0 * 4 + 0 * 2 + 1] = 6.0;
  const SymTensor s3 = symmetrize(dense3, 2, 3);
  CHECK(s3.coeff(std::array{0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-14));

  SUBCASE("idempotence on symmetric input") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + rng.uniform_int(3);
      const int m = rng.uniform_int(4);
      const SymTensor u = rng.tensor(n, m);
      const SymTensor round = symmetrize(to_dense(u), n, m);
      CHECK(testing::max_abs_diff(u.coeffs(), round.coeffs()) < 1e-14);
    }
  }

  CHECK_THROWS_AS(symmetrize(dense, 2, 3), ShapeError);
}

TEST_CASE("sym_product matches the dense oracle") {
  const Vec e1{1, 0}, e2{0, 1};
  const SymTensor p = sym_product(SymTensor::from_vector(e1), SymTensor::from_vector(e2));
  CHECK(p.coeff(std::array{0, 1}) == doctest::Approx(0.5));
  CHECK(p.coeff(std::array{0, 0}) == 0.0);
  CHECK(p.coeff(std::array{1, 1}) == 0.0);

  // rank-0 unit
  Rng rng(5);
  const SymTensor u = rng.tensor(3, 2);
  const SymTensor scaled_u = sym_product(u, SymTensor::scalar(3, 1.0));
  CHECK(testing::max_abs_diff(u.coeffs(), scaled_u.coeffs()) < 1e-15);

  // associativity instance with the exact value 1/3
  const SymTensor e11 = sym_product(SymTensor::from_vector(e1), SymTensor::from_vector(e1));
  const SymTensor left = sym_product(e11, SymTensor::from_vector(e2));
  const SymTensor right = sym_product(SymTensor::from_vector(e1),
                                      sym_product(SymTensor::from_vector(e1), SymTensor::from_vector(e2)));
  CHECK(left.coeff(std::array{0, 0, 1}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(testing::max_abs_diff(left.coeffs(), right.coeffs()) < 1e-14);

  SUBCASE("commutative, associative, dense-oracle agreement on random tensors") {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + rng.uniform_int(3);
      const int pa = rng.uniform_int(3), pb = rng.uniform_int(3 - 1);
      const SymTensor a = rng.tensor(n, pa), b = rng.tensor(n, pb);
      const SymTensor ab = sym_product(a, b);
      const SymTensor ba = sym_product(b, a);
      CHECK(testing::max_abs_diff(ab.coeffs(), ba.coeffs()) < 1e-13);
      const auto dense = oracle::dense_sym_product(to_dense(a), pa, to_dense(b), pb, n);
      const SymTensor via_dense = symmetrize(dense, n, pa + pb);
      CHECK(testing::max_abs_diff(ab.coeffs(), via_dense.coeffs()) < 1e-13);
    }
  }

  CHECK_THROWS_AS(sym_product(rng.tensor(2, 1), rng.tensor(3, 1)), ShapeError);
}

TEST_CASE("vec_power") {
  const SymTensor p = vec_power(Vec{1, 0}, 2);
  CHECK(p.coeff(std::array{0, 0}) == 1.0);
  CHECK(p.coeff(std::array{0, 1}) == 0.0);
  CHECK(p.coeff(std::array{1, 1}) == 0.0);

  const SymTensor one = vec_power(Vec{3, 4}, 0);
  CHECK(one.rank() == 0);
  CHECK(one[0] == 1.0);

  const double s = 1.0 / std::sqrt(2.0);
  const SymTensor q = vec_power(Vec{s, s}, 2);
  for (int i = 0; i < q.size(); ++i) CHECK(q[i] == doctest::Approx(0.5).epsilon(1e-14));

  SUBCASE("equals repeated sym_product") {
    Rng rng(7);
    const Vec w = rng.vec(3);
    SymTensor acc = SymTensor::scalar(3, 1.0);
    for (int i = 0; i < 3; ++i) acc = sym_product(acc, SymTensor::from_vector(w));
    CHECK(testing::max_abs_diff(acc.coeffs(), vec_power(w, 3).coeffs()) < 1e-13);
  }
}

TEST_CASE("i_vec and j_vec") {
  Rng rng(13);
  const Vec x{0.3, -0.7};
  const SymTensor c = SymTensor::scalar(2, 2.5);
  const SymTensor xc = i_vec(x, c);
  CHECK(xc.coeff(std::array{0}) == doctest::Approx(2.5 * 0.3));
  CHECK(xc.coeff(std::array{1}) == doctest::Approx(2.5 * -0.7));

  const SymTensor e1e2 = i_vec(Vec{1, 0}, SymTensor::from_vector(Vec{0, 1}));
  CHECK(e1e2.coeff(std::array{0, 1}) == doctest::Approx(0.5));

  const SymTensor xxc = i_vec(x, i_vec(x, SymTensor::scalar(2, 1.0)));
  CHECK(testing::max_abs_diff(xxc.coeffs(), vec_power(x, 2).coeffs()) < 1e-14);

  SUBCASE("j_vec on powers of a unit vector") {
    const Vec w = rng.unit(3);
    for (int m = 1; m <= 4; ++m) {
      const SymTensor jm = j_vec(w, vec_power(w, m));
      CHECK(testing::max_abs_diff(jm.coeffs(), vec_power(w, m - 1).coeffs()) < 1e-13);
    }
  }

  SUBCASE("zero vector annihilates") {
    const SymTensor u = rng.tensor(3, 2);
    CHECK(j_vec(Vec{0, 0, 0}, u).max_abs() == 0.0);
  }

  SUBCASE("adjointness of i and j on 100 random triples") {
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + rng.uniform_int(3);
      const int m = rng.uniform_int(4);
      const Vec y = rng.vec(n);
      const SymTensor u = rng.tensor(n, m);
      const SymTensor v = rng.tensor(n, m + 1);
      CHECK(inner(i_vec(y, u), v) ==
            doctest::Approx(inner(u, j_vec(y, v))).epsilon(1e-12));
    }
  }

  SUBCASE("dense-oracle agreement") {
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + rng.uniform_int(3);
      const int m = 1 + rng.uniform_int(3);
      const Vec y = rng.vec(n);
      const SymTensor u = rng.tensor(n, m);
      const auto ji = oracle::dense_j_vec(y, to_dense(u), n, m);
      const SymTensor j_direct = j_vec(y, u);
      CHECK(testing::max_abs_diff(to_dense(j_direct), ji) < 1e-13);
      const auto ii = oracle::dense_i_vec(y, to_dense(u), n, m);
      const SymTensor i_direct = i_vec(y, u);
      CHECK(testing::max_abs_diff(to_dense(i_direct), ii) < 1e-13);
    }
  }

  CHECK_THROWS_AS(j_vec(x, SymTensor::scalar(2, 1.0)), ShapeError);
  CHECK_THROWS_AS(i_vec(Vec{1, 0, 0}, SymTensor::scalar(2, 1.0)), ShapeError);
}

TEST_CASE("inner product is the full contraction") {
  Rng rng(17);
  const Vec w = rng.unit(3);
  for (int m = 0; m <= 4; ++m)
    CHECK(inner(vec_power(w, m), vec_power(w, m)) == doctest::Approx(1.0).epsilon(1e-12));

  const SymTensor e1e2 = sym_product(SymTensor::from_vector(Vec{1, 0}),
                                     SymTensor::from_vector(Vec{0, 1}));
  CHECK(inner(e1e2, e1e2) == doctest::Approx(0.5).epsilon(1e-14));

  SUBCASE("agrees with the dense contraction and the transversal pairing") {
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + rng.uniform_int(3);
      const int m = rng.uniform_int(4);
      const SymTensor u = rng.tensor(n, m);
      const SymTensor v = rng.tensor(n, m);
      CHECK(inner(u, v) ==
            doctest::Approx(oracle::dense_inner(to_dense(u), to_dense(v))).epsilon(1e-12));
      const Vec dir = rng.unit(n);
      CHECK(inner(u, vec_power(dir, m)) ==
            doctest::Approx(oracle::dense_inner(to_dense(u), to_dense(vec_power(dir, m))))
                .epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(inner(rng.tensor(2, 1), rng.tensor(2, 2)), ShapeError);
}

TEST_CASE("frame monomial bases") {
  const Frame f2 = frame_of(Vec{1, 0});

  SUBCASE("n=2 m=1: monomials are the frame vectors, duals 1") {
    const auto basis = frame_monomials(f2, 1);
    REQUIRE(basis.size() == 2);
    const int pos_omega = basis.position(MultiIndex({0, 1}));
    const int pos_b = basis.position(MultiIndex({1, 0}));
    CHECK(testing::max_abs_diff(basis.monomials[static_cast<std::size_t>(pos_omega)].coeffs(),
                                SymTensor::from_vector(f2.omega).coeffs()) < 1e-15);
    CHECK(testing::max_abs_diff(basis.monomials[static_cast<std::size_t>(pos_b)].coeffs(),
                                SymTensor::from_vector(f2.basis[0]).coeffs()) < 1e-15);
    CHECK(basis.dual_weights[static_cast<std::size_t>(pos_omega)] == doctest::Approx(1.0));
    CHECK(basis.dual_weights[static_cast<std::size_t>(pos_b)] == doctest::Approx(1.0));
  }

  SUBCASE("n=2 m=2: dual weights 1,2,1 and the diagonal Gram matrix") {
    const auto basis = frame_monomials(f2, 2);
    REQUIRE(basis.size() == 3);
    for (int i = 0; i < 3; ++i) {
      const auto& ell = basis.indices[static_cast<std::size_t>(i)];
      const double expect_dual = multinomial(ell);
      CHECK(basis.dual_weights[static_cast<std::size_t>(i)] == doctest::Approx(expect_dual));
      for (int j = 0; j < 3; ++j) {
        const double g = inner(basis.monomials[static_cast<std::size_t>(i)],
                               basis.monomials[static_cast<std::size_t>(j)]);
        if (i == j)
          CHECK(g == doctest::Approx(1.0 / expect_dual).epsilon(1e-12));
        else
          CHECK(std::abs(g) < 1e-13);
      }
    }
    CHECK(basis.dual_weights[static_cast<std::size_t>(basis.position(MultiIndex({1, 1})))] ==
          doctest::Approx(2.0));
  }

  SUBCASE("expansion roundtrip at n=3 m=3") {
    Rng rng(23);
    const Frame f3 = frame_of(rng.unit(3));
    const auto basis = frame_monomials(f3, 3);
    CHECK(basis.size() == sym_dim(3, 3));
    for (int trial = 0; trial < 10; ++trial) {
      const SymTensor u = rng.tensor(3, 3);
      const SymTensor round = reconstruct_from_frame(expand_in_frame(u, basis), basis);
      CHECK(testing::max_abs_diff(u.coeffs(), round.coeffs()) < 1e-12);
    }
  }

  SUBCASE("pure omega powers project onto the omega monomial only") {
    Rng rng(29);
    const Frame f3 = frame_of(rng.unit(3));
    for (int m = 1; m <= 3; ++m) {
      const auto basis = frame_monomials(f3, m);
      const auto c = expand_in_frame(vec_power(f3.omega, m), basis);
      for (int i = 0; i < basis.size(); ++i) {
        const auto& ell = basis.indices[static_cast<std::size_t>(i)];
        const double expect = ell[2] == m ? 1.0 : 0.0;
        CHECK(std::abs(c[static_cast<std::size_t>(i)] - expect) < 1e-12);
      }
      const auto zeros = expand_in_frame(SymTensor(3, m), basis);
      for (double v : zeros) CHECK(v == 0.0);
    }
  }

  SUBCASE("non-orthonormal frame rejected") {
    Frame bad = f2;
    bad.basis[0] = Vec{0.9, 0.1};
    CHECK_THROWS_AS(frame_monomials(bad, 2), ShapeError);
  }
}
