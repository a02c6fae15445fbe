#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tomo/scalar_radon.hpp"

using namespace tomo;
using testing::quick_phantom;

namespace {

const Grid kGrid = Grid::centered(2, 256, 5.0);

TensorField gaussian_field(const Grid& g, double cx, double cy) {
  TensorField u(g, 0);
  auto dst = u.component(0);
  std::size_t node = 0;
  for (int i0 = 0; i0 < g.shape[0]; ++i0)
    for (int i1 = 0; i1 < g.shape[1]; ++i1, ++node) {
      const double x = g.coord(0, i0) - cx, y = g.coord(1, i1) - cy;
      dst[node] = std::exp(-(x * x + y * y));
    }
  return u;
}

double rel_l2(const Sinogram& got, const Sinogram& expect) {
  Sinogram diff = got;
  diff -= expect;
  return diff.l2() / expect.l2();
}

}  // namespace

TEST_CASE("frame_of") {
  const Frame f = frame_of(Vec{1, 0});
  CHECK(f.basis[0][0] == doctest::Approx(0.0));
  CHECK(f.basis[0][1] == doctest::Approx(1.0));

  SUBCASE("n=3 generic and pole branches stay orthonormal and deterministic") {
    for (const Vec& w : {Vec{1, 0, 0}, Vec{0, 0, 1}, Vec{0, 0, -1},
                         normalized(Vec{0.3, -0.5, 0.81})}) {
      const Frame f3 = frame_of(w);
      CHECK_NOTHROW(validate_orthonormal(f3, 1e-12));
      const Frame again = frame_of(w);
      for (int a = 0; a < 2; ++a)
        CHECK(testing::max_abs_diff(f3.basis[static_cast<std::size_t>(a)],
                                    again.basis[static_cast<std::size_t>(a)]) == 0.0);
    }
  }

  CHECK_THROWS_AS(frame_of(Vec{1, 1}), ShapeError);
}

TEST_CASE("direction sets") {
  const DirectionSet half = DirectionSet::half_circle(180);
  CHECK(half.count() == 180);
  CHECK(half.directions[0][0] == doctest::Approx(1.0));
  // no antipodal duplicates on [0, pi)
  for (int i = 0; i < half.count(); ++i)
    for (int j = i + 1; j < half.count(); ++j) {
      const double d = dot(half.directions[static_cast<std::size_t>(i)],
                           half.directions[static_cast<std::size_t>(j)]);
      CHECK(d > -1.0 + 1e-12);
    }

  const DirectionSet hemi = DirectionSet::hemisphere(32);
  CHECK(hemi.count() == 32);
  for (const Vec& w : hemi.directions) {
    CHECK(norm(w) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w[2] > 0.0);
  }
}

TEST_CASE("radon_forward of the unit Gaussian matches sqrt(pi) exp(-p^2)") {
  // bilinear-interpolation bias is O(h^2); the 1e-4 analytic target needs 512^2
  const Grid fine = Grid::centered(2, 512, 5.0);
  const TensorField u = gaussian_field(fine, 0.0, 0.0);
  const DirectionSet dirs = DirectionSet::half_circle(16);
  const PGrid pgrid = PGrid::for_grid(fine);
  const Sinogram s = radon_forward(u, dirs, pgrid, QuadratureSpec{0.25, 1e-6});
  Sinogram expect = s;
  for (int d = 0; d < dirs.count(); ++d)
    for (int ip = 0; ip < pgrid.count; ++ip) {
      const double p = pgrid.p(ip);
      expect.at(d, ip) = std::sqrt(M_PI) * std::exp(-p * p);
    }
  CHECK(rel_l2(s, expect) < 1e-4);

  SUBCASE("shifted Gaussian translates in p") {
    const Vec c{0.8, -0.6};
    const TensorField uc = gaussian_field(fine, c[0], c[1]);
    const Sinogram sc = radon_forward(uc, dirs, pgrid, QuadratureSpec{0.25, 1e-6});
    Sinogram expected = sc;
    for (int d = 0; d < dirs.count(); ++d) {
      const double shift = dot(c, dirs.directions[static_cast<std::size_t>(d)]);
      for (int ip = 0; ip < pgrid.count; ++ip) {
        const double p = pgrid.p(ip) - shift;
        expected.at(d, ip) = std::sqrt(M_PI) * std::exp(-p * p);
      }
    }
    CHECK(rel_l2(sc, expected) < 1e-4);
  }

  SUBCASE("zero field gives the zero sinogram") {
    const Sinogram z = radon_forward(TensorField(fine, 0), dirs, pgrid);
    CHECK(z.max_abs() == 0.0);
  }

  SUBCASE("p-grid must cover the support") {
    PGrid small = pgrid;
    small.radius = 0.5;
    small.count = 64;
    CHECK_THROWS_AS(radon_forward(u, dirs, small, QuadratureSpec{0.25, 1e-6}), ShapeError);
  }
}

TEST_CASE("p_derivative") {
  const DirectionSet dirs = DirectionSet::half_circle(4);
  PGrid pgrid;
  pgrid.radius = 8.0;
  pgrid.count = 401;
  Sinogram s(dirs, pgrid);
  for (int d = 0; d < dirs.count(); ++d)
    for (int ip = 0; ip < pgrid.count; ++ip) {
      const double p = pgrid.p(ip);
      s.at(d, ip) = std::exp(-p * p);
    }

  SUBCASE("first derivative of exp(-p^2)") {
    const Sinogram ds = p_derivative(s, 1);
    Sinogram expect = ds;
    for (int d = 0; d < dirs.count(); ++d)
      for (int ip = 0; ip < pgrid.count; ++ip) {
        const double p = pgrid.p(ip);
        expect.at(d, ip) = -2.0 * p * std::exp(-p * p);
      }
    CHECK(rel_l2(ds, expect) < 1e-4);
  }

  SUBCASE("zero stays zero") {
    Sinogram z(dirs, pgrid);
    CHECK(p_derivative(z, 3).max_abs() == 0.0);
  }

  SUBCASE("derivative composes") {
    const Sinogram twice = p_derivative(p_derivative(s, 1), 1);
    const Sinogram once = p_derivative(s, 2);
    CHECK(rel_l2(twice, once) < 1e-8);
  }

  CHECK_THROWS_AS(p_derivative(s, 0), ShapeError);
}

TEST_CASE("radon roundtrip via filtered backprojection") {
  const DirectionSet dirs = DirectionSet::half_circle(360);
  const PGrid pgrid = PGrid::for_grid(kGrid);

  SUBCASE("Gaussian bump") {
    const TensorField u = gaussian_field(kGrid, 0.4, -0.2);
    const Sinogram s = radon_forward(u, dirs, pgrid, QuadratureSpec{0.25, 1e-6});
    const TensorField back = radon_invert(s, kGrid);
    CHECK(l2_error(back, u) < 1e-2);
  }

  SUBCASE("two-bump phantom") {
    TensorField u = gaussian_field(kGrid, 0.9, 0.6);
    const TensorField u2 = gaussian_field(kGrid, -1.0, -0.4);
    u += u2;
    const Sinogram s = radon_forward(u, dirs, pgrid, QuadratureSpec{0.25, 1e-6});
    const TensorField back = radon_invert(s, kGrid);
    CHECK(l2_error(back, u) < 2e-2);
  }

  SUBCASE("zero sinogram maps to the zero field") {
    const Sinogram z(dirs, pgrid);
    CHECK(radon_invert(z, kGrid).max_abs() == 0.0);
  }

  SUBCASE("n=3 inversion is rejected") {
    const Grid g3 = Grid::centered(3, 16, 2.0);
    const DirectionSet d3 = DirectionSet::hemisphere(4);
    const Sinogram s3(d3, PGrid::for_grid(g3));
    CHECK_THROWS_AS(radon_invert(s3, g3), ShapeError);
  }
}

TEST_CASE("evenness and the gradient shift property") {
  const TensorField u = gaussian_phantom(quick_phantom(42), kGrid, 0);
  const PGrid pgrid = PGrid::for_grid(kGrid);

  SUBCASE("s(-w,-p) = s(w,p) on paired directions") {
    std::vector<Vec> both;
    for (double theta : {0.3, 1.1, 2.0}) {
      both.push_back({std::cos(theta), std::sin(theta)});
      both.push_back({-std::cos(theta), -std::sin(theta)});
    }
    const Sinogram s = radon_forward(u, DirectionSet::from_directions(both), pgrid,
                                     QuadratureSpec{0.25, 1e-7});
    for (int pair = 0; pair < 3; ++pair)
      for (int ip = 0; ip < pgrid.count; ++ip)
        CHECK(s.at(2 * pair, ip) ==
              doctest::Approx(s.at(2 * pair + 1, pgrid.count - 1 - ip)).epsilon(1e-10));
  }

  SUBCASE("R(a . grad u) = <w,a> d/dp R(u)") {
    const DirectionSet dirs = DirectionSet::half_circle(48);
    const Vec a{0.77, -0.33};
    const TensorField du = d_field(u);
    TensorField adu(kGrid, 0);
    for (int c = 0; c < 2; ++c) {
      auto src = du.component(c);
      auto dst = adu.component(0);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += a[static_cast<std::size_t>(c)] * src[i];
    }
    const Sinogram lhs = radon_forward(adu, dirs, pgrid, QuadratureSpec{0.25, 1e-7});
    Sinogram rhs = p_derivative(radon_forward(u, dirs, pgrid, QuadratureSpec{0.25, 1e-7}), 1);
    for (int d = 0; d < dirs.count(); ++d) {
      const double scale = dot(dirs.directions[static_cast<std::size_t>(d)], a);
      for (double& v : rhs.row(d)) v *= scale;
    }
    CHECK(rel_l2(lhs, rhs) < 1e-3);
  }

  SUBCASE("mass conservation across directions") {
    const TensorField bump = gaussian_field(kGrid, 0.3, 0.5);  // nonzero total mass
    const DirectionSet dirs = DirectionSet::half_circle(32);
    const Sinogram s = radon_forward(bump, dirs, pgrid, QuadratureSpec{0.25, 1e-6});
    double total = 0.0;
    for (double v : bump.component(0)) total += v;
    total *= kGrid.cell_volume();
    for (int d = 0; d < dirs.count(); ++d)
      CHECK(std::abs(p_integral(s, d) - total) / std::abs(total) < 1e-6);
  }
}
