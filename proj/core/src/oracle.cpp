#include "tomo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tomo/decomposition.hpp"
#include "tomo/phantom.hpp"
#include "tomo/tensor_transforms.hpp"

namespace tomo::oracle {

namespace {

std::size_t dense_size(int n, int m) {
  std::size_t s = 1;
  for (int i = 0; i < m; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

void check_cap(int n, int m) {
  if (n > 4 || m > 4 || n < 1 || m < 0)
    throw ShapeError("oracle dense reference: size cap n <= 4, m <= 4 exceeded");
}

void unflatten(std::size_t flat, int n, int m, int* tuple) {
  for (int a = m - 1; a >= 0; --a) {
    tuple[a] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
}

std::size_t flatten(const int* tuple, int n, int m) {
  std::size_t f = 0;
  for (int a = 0; a < m; ++a) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(tuple[a]);
  return f;
}

}  // namespace

std::vector<double> dense_symmetrize(std::span<const double> dense, int n, int m) {
  check_cap(n, m);
  if (dense.size() != dense_size(n, m)) throw ShapeError("dense_symmetrize: size mismatch");
  std::vector<double> out(dense.size(), 0.0);
  int tuple[8], perm[8];
  std::iota(perm, perm + m, 0);
  const double scale = 1.0 / factorial(m);
  // sum over all permutations of the slots
  std::vector<std::vector<int>> perms;
  do {
    perms.emplace_back(perm, perm + m);
  } while (std::next_permutation(perm, perm + m));
  for (std::size_t flat = 0; flat < dense.size(); ++flat) {
    unflatten(flat, n, m, tuple);
    double acc = 0.0;
    int permuted[8];
    for (const auto& p : perms) {
      for (int a = 0; a < m; ++a) permuted[a] = tuple[p[static_cast<std::size_t>(a)]];
      acc += dense[flatten(permuted, n, m)];
    }
    out[flat] = acc * scale;
  }
  return out;
}

std::vector<double> dense_outer(std::span<const double> a, int pa,
                                std::span<const double> b, int pb, int n) {
  check_cap(n, pa + pb);
  std::vector<double> out(dense_size(n, pa + pb));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

std::vector<double> dense_sym_product(std::span<const double> a, int pa,
                                      std::span<const double> b, int pb, int n) {
  return dense_symmetrize(dense_outer(a, pa, b, pb, n), n, pa + pb);
}

std::vector<double> dense_i_vec(const Vec& x, std::span<const double> u, int n, int m) {
  return dense_sym_product(u, m, std::span<const double>(x.data(), x.size()), 1, n);
}

std::vector<double> dense_j_vec(const Vec& x, std::span<const double> u, int n, int m) {
  check_cap(n, m);
  if (m < 1) throw ShapeError("dense_j_vec: rank-0 input");
  std::vector<double> out(dense_size(n, m - 1), 0.0);
  for (std::size_t s = 0; s < out.size(); ++s)
    for (int k = 0; k < n; ++k)
      out[s] += x[static_cast<std::size_t>(k)] * u[s * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)];
  return out;
}

double dense_inner(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("dense_inner: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

TensorField brute_delta_power(const TensorField& g, int p, double boundary_tol) {
  if (p < 0 || p > g.rank()) throw ShapeError("brute_delta_power: rank underflow");
  TensorField out = g;
  for (int i = 0; i < p; ++i) out = div_field(out, boundary_tol);
  return out;
}

namespace {

long long gcd_ll(long long a, long long b) {
  while (b) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

Rational make_rational(long long num, long long den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = gcd_ll(num < 0 ? -num : num, den);
  return g ? Rational{num / g, den / g} : Rational{0, 1};
}

Rational radd(Rational a, Rational b) {
  return make_rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rational rmul(Rational a, Rational b) { return make_rational(a.num * b.num, a.den * b.den); }

Rational rpow(Rational a, int p) {
  Rational r{1, 1};
  for (int i = 0; i < p; ++i) r = rmul(r, a);
  return r;
}

}  // namespace

std::vector<Rational> delta_d_coefficients(int ell, int m) {
  if (ell < 1) throw ShapeError("delta_d_coefficients: ell >= 1 required");
  // div^p d^p on rank m factors as div (div^(p-1) d^(p-1)) d with the inner
  // operator acting on rank m + 1, so the recursion consumes the rank-(m+1)
  // coefficients of order p - 1 and the rank-m splitting
  // div d = c0 lap + c1 d div.
  std::function<std::vector<Rational>(int, int)> build = [&](int p, int rank) {
    const Rational c0 = make_rational(1, rank + 1);
    const Rational c1 = make_rational(rank, rank + 1);
    if (p == 1) return std::vector<Rational>{c0, c1};
    const std::vector<Rational> prev = build(p - 1, rank + 1);
    // sum_i prev_i lap^(p-1-i) (div d)^(i+1), with
    // (div d)^(i+1) = (c0 lap + c1 d div)^(i+1) expanded binomially
    // (the componentwise Laplacian commutes with d div).
    std::vector<Rational> next(static_cast<std::size_t>(p) + 1, Rational{0, 1});
    for (int j = 0; j <= p; ++j) {
      Rational acc{0, 1};
      for (int i = std::max(j - 1, 0); i < p; ++i) {
        const Rational term = rmul(
            prev[static_cast<std::size_t>(i)],
            rmul(make_rational(binomial(i + 1, j), 1),
                 rmul(rpow(c0, i + 1 - j), rpow(c1, j))));
        acc = radd(acc, term);
      }
      next[static_cast<std::size_t>(j)] = acc;
    }
    return next;
  };
  return build(ell, m);
}

// ---------------------------------------------------------------------------
// identity suite
// ---------------------------------------------------------------------------

namespace {

struct Suite {
  const SuiteConfig& cfg;
  IdentityReport report;

  void add(const std::string& name, const std::string& statement, double residual,
           double tol, const std::string& configuration) {
    const double scaled = tol * cfg.tol_scale;
    report.items.push_back(
        {name, statement, residual, scaled, residual <= scaled, configuration});
  }
};

/// Per-dimension tolerances for the quadrature-bound identities (coarse 3-d
/// grids cannot match the 2-d acceptance resolutions).
struct TransformTols {
  double gradient_shift;
  double potential_shift;
  double divergence_duality;
  double kernel;
  double omega_monomials;
  QuadratureSpec quad;
  std::string tag;
};

PhantomSpec suite_phantom(const Grid& grid, std::uint64_t seed,
                          PhantomSpec::Target target = PhantomSpec::Target::raw) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.target = target;
  if (grid.dim() == 2) {
    spec.center_radius = 1.0;
    spec.width_min = 0.30;
    spec.width_max = 0.40;
  } else {
    spec.center_radius = 0.8;
    spec.width_min = 0.42;
    spec.width_max = 0.50;
  }
  return spec;
}

double sino_rel(const Sinogram& a, const Sinogram& b) {
  Sinogram diff = a;
  diff -= b;
  const double nb = b.l2();
  return nb == 0.0 ? diff.l2() : diff.l2() / nb;
}

double componentwise_scale(const TensorField& f, const DirectionSet& dirs,
                           const PGrid& pgrid, const QuadratureSpec& quad) {
  const TensorSinogram cw = componentwise_radon(f, dirs, pgrid, quad);
  double scale = 0.0;
  for (int c = 0; c < cw.components(); ++c)
    scale = std::max(scale, cw.component(c).l2());
  return scale;
}

void run_algebraic_identities(Suite& s, const Grid& grid, const std::string& tag,
                              std::uint64_t seed_base) {
  // div d = c0 lap + c1 d div with c0 = 1/(m+1), c1 = m/(m+1)
  for (int m = 1; m <= 3; ++m) {
    const TensorField v =
        gaussian_phantom(suite_phantom(grid, seed_base + static_cast<std::uint64_t>(m)), grid, m);
    const TensorField lhs = div_field(d_field(v, kNoDecayCheck), kNoDecayCheck);
    TensorField rhs = laplacian_field(v, kNoDecayCheck);
    rhs *= 1.0 / (m + 1);
    TensorField dd = d_field(div_field(v, kNoDecayCheck), kNoDecayCheck);
    dd *= static_cast<double>(m) / (m + 1);
    rhs += dd;
    s.add("divd-split-m" + std::to_string(m) + tag,
          "div d v = 1/(m+1) lap v + m/(m+1) d div v", l2_error(lhs, rhs), 1e-8,
          tag.empty() ? "n=2" : "n=3");
  }

  // div^l d^l expansion coefficients (l = 2)
  for (int m = 1; m <= 2; ++m) {
    const TensorField v = gaussian_phantom(
        suite_phantom(grid, seed_base + 10 + static_cast<std::uint64_t>(m)), grid, m);
    const auto coeffs = delta_d_coefficients(2, m);
    TensorField lhs = v;
    for (int i = 0; i < 2; ++i) lhs = d_field(lhs, kNoDecayCheck);
    for (int i = 0; i < 2; ++i) lhs = div_field(lhs, kNoDecayCheck);
    TensorField rhs(grid, m);
    for (int i = 0; i <= 2; ++i) {
      TensorField term = v;
      for (int a = 0; a < i; ++a) term = d_field(div_field(term, kNoDecayCheck), kNoDecayCheck);
      for (int a = 0; a < 2 - i; ++a) term = laplacian_field(term, kNoDecayCheck);
      term *= coeffs[static_cast<std::size_t>(i)].value();
      rhs += term;
    }
    s.add("divd-expansion-l2-m" + std::to_string(m) + tag,
          "div^2 d^2 = sum_i c_i lap^(2-i) (d div)^i", l2_error(lhs, rhs), 1e-6,
          "l=2 m=" + std::to_string(m));
  }

  // solenoidal fields: div^(l+1) d^l s = 0
  for (int m = 1; m <= 2; ++m)
    for (int l = 1; l <= 2; ++l) {
      const std::uint64_t seed = seed_base + 20 + static_cast<std::uint64_t>(10 * m + l);
      const TensorField raw = gaussian_phantom(suite_phantom(grid, seed), grid, m);
      const TensorField sol =
          gaussian_phantom(suite_phantom(grid, seed, PhantomSpec::Target::solenoidal), grid, m);
      TensorField chain = sol;
      for (int a = 0; a < l; ++a) chain = d_field(chain, kNoDecayCheck);
      for (int a = 0; a < l + 1; ++a) chain = div_field(chain, kNoDecayCheck);
      TensorField ref = raw;
      for (int a = 0; a < l; ++a) ref = d_field(ref, kNoDecayCheck);
      for (int a = 0; a < l + 1; ++a) ref = div_field(ref, kNoDecayCheck);
      const double denom = l2_norm(ref);
      s.add("solenoidal-chain-l" + std::to_string(l) + "-m" + std::to_string(m) + tag,
            "div^(l+1) d^l s = 0 for solenoidal s",
            denom == 0.0 ? l2_norm(chain) : l2_norm(chain) / denom, 1e-6,
            "l=" + std::to_string(l) + " m=" + std::to_string(m));
    }
}

void run_product_rule_identities(Suite& s, const Grid& grid, std::uint64_t seed_base) {
  const Vec a = grid.dim() == 2 ? Vec{0.6, -0.8} : Vec{0.6, -0.64, 0.48};
  // div^k (<x,a> f) = k <a, div^(k-1) f> + <x,a> div^k f
  for (int m = 1; m <= 2; ++m)
    for (int k = 1; k <= m; ++k) {
      const TensorField f = gaussian_phantom(
          suite_phantom(grid, seed_base + static_cast<std::uint64_t>(10 * m + k)), grid, m);
      const TensorField g = multiply_linear_weight(f, a, 1);
      const TensorField lhs = brute_delta_power(g, k, kNoDecayCheck);
      TensorField rhs = contract_power(brute_delta_power(f, k - 1, kNoDecayCheck), a, 1);
      rhs *= static_cast<double>(k);
      rhs += multiply_linear_weight(brute_delta_power(f, k, kNoDecayCheck), a, 1);
      s.add("weighted-div-linear-m" + std::to_string(m) + "-k" + std::to_string(k),
            "div^k(<x,a> f) = k <a, div^(k-1) f> + <x,a> div^k f", l2_error(lhs, rhs),
            1e-6, "m=" + std::to_string(m) + " k=" + std::to_string(k));
    }

  // div^p (<x,a>^k f) closed form at p = m
  for (int m = 2; m <= 3; ++m)
    for (int k = 2; k <= m; ++k) {
      const TensorField f = gaussian_phantom(
          suite_phantom(grid, seed_base + 40 + static_cast<std::uint64_t>(10 * m + k)), grid, m);
      const TensorField g = multiply_linear_weight(f, a, k);
      const TensorField lhs = brute_delta_power(g, m, kNoDecayCheck);
      TensorField rhs(grid, 0);
      for (int i = 0; i < k; ++i) {
        TensorField term =
            contract_power(brute_delta_power(f, m - (k - i), kNoDecayCheck), a, k - i);
        term *= static_cast<double>(binomial(k, i)) * falling_factorial(m, k - i);
        if (i > 0) term = multiply_linear_weight(term, a, i);
        rhs += term;
      }
      rhs += multiply_linear_weight(brute_delta_power(f, m, kNoDecayCheck), a, k);
      s.add("weighted-div-power-m" + std::to_string(m) + "-k" + std::to_string(k),
            "div^m(<x,a>^k f) = sum_i C(k,i) fall(m,k-i) <x,a>^i <a^(k-i), "
            "div^(m-k+i) f> + <x,a>^k div^m f",
            l2_error(lhs, rhs), 1e-6, "m=" + std::to_string(m) + " k=" + std::to_string(k));
    }
}

void run_transform_identities(Suite& s, const Grid& grid, const DirectionSet& dirs,
                              const PGrid& pgrid, std::uint64_t seed_base,
                              const TransformTols& tols) {
  const std::string& tag = tols.tag;
  const QuadratureSpec& quad = tols.quad;

  // derivative property of the scalar transform
  {
    const TensorField u = gaussian_phantom(suite_phantom(grid, seed_base + 1), grid, 0);
    const Vec a = grid.dim() == 2 ? Vec{0.36, 0.77} : Vec{0.36, 0.52, -0.41};
    TensorField adu(grid, 0);
    const TensorField du = d_field(u, kNoDecayCheck);
    for (int c = 0; c < du.components(); ++c) {
      auto src = du.component(c);
      auto dst = adu.component(0);
      for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] += a[static_cast<std::size_t>(c)] * src[i];
    }
    const Sinogram lhs = radon_forward(adu, dirs, pgrid, quad);
    Sinogram rhs = p_derivative(radon_forward(u, dirs, pgrid, quad), 1);
    for (int d = 0; d < dirs.count(); ++d) {
      const double scale = dot(dirs.directions[static_cast<std::size_t>(d)], a);
      for (double& v : rhs.row(d)) v *= scale;
    }
    s.add("radon-gradient-shift" + tag, "R(a . grad u) = <w,a> d/dp R(u)",
          sino_rel(lhs, rhs), tols.gradient_shift, tag.empty() ? "n=2" : "n=3");
  }

  // shift of the transversal transform under d
  for (int m = 1; m <= 2; ++m) {
    const TensorField v = gaussian_phantom(
        suite_phantom(grid, seed_base + 10 + static_cast<std::uint64_t>(m)), grid, m - 1);
    const Sinogram lhs = trt(d_field(v, kNoDecayCheck), dirs, pgrid, quad);
    const Sinogram rhs = p_derivative(
        m - 1 == 0 ? radon_forward(v, dirs, pgrid, quad) : trt(v, dirs, pgrid, quad), 1);
    s.add("trt-potential-shift-m" + std::to_string(m) + tag,
          "T^m(d v) = d/dp T^(m-1)(v)", sino_rel(lhs, rhs), tols.potential_shift,
          "m=" + std::to_string(m));
  }

  // R(div^m g) = d^m/dp^m T^m g
  for (int m = 1; m <= 2; ++m) {
    const TensorField g = gaussian_phantom(
        suite_phantom(grid, seed_base + 20 + static_cast<std::uint64_t>(m)), grid, m);
    const Sinogram lhs = radon_forward(brute_delta_power(g, m), dirs, pgrid, quad);
    const Sinogram rhs = p_derivative(trt(g, dirs, pgrid, quad), m);
    s.add("divergence-transversal-duality-m" + std::to_string(m) + tag,
          "R(div^m g) = d^m/dp^m T^m(g)", sino_rel(lhs, rhs), tols.divergence_duality,
          "m=" + std::to_string(m));
  }

  // kernel of the longitudinal transform: potential fields
  for (int m = 1; m <= 2; ++m) {
    PhantomSpec pot = suite_phantom(grid, seed_base + 30 + static_cast<std::uint64_t>(m),
                                    PhantomSpec::Target::potential_of_order);
    pot.potential_order = 1;
    const TensorField f = gaussian_phantom(pot, grid, m);
    double worst = 0.0;
    for (const auto& ell : dataset_indices(TransformFamily::lrt, grid.dim(), m, 0))
      worst = std::max(worst, lrt(f, ell, dirs, pgrid, quad).l2());
    const double denom = componentwise_scale(f, dirs, pgrid, quad);
    s.add("lrt-kernel-potential-m" + std::to_string(m) + tag,
          "L(d v) = 0 for every in-plane monomial",
          denom == 0.0 ? worst : worst / denom, tols.kernel, "m=" + std::to_string(m));
  }

  // kernel of the transversal transform: solenoidal stacks
  for (int m = 1; m <= 2; ++m) {
    TensorField f(grid, m);
    for (int i = 0; i < m; ++i) {
      const TensorField sol = gaussian_phantom(
          suite_phantom(grid, seed_base + 40 + static_cast<std::uint64_t>(10 * m + i),
                        PhantomSpec::Target::solenoidal),
          grid, m - i);
      TensorField lifted = sol;
      for (int a = 0; a < i; ++a) lifted = d_field(lifted, kNoDecayCheck);
      f += lifted;
    }
    const Sinogram t = trt(f, dirs, pgrid, quad);
    const double denom = componentwise_scale(f, dirs, pgrid, quad);
    s.add("trt-kernel-solenoidal-m" + std::to_string(m) + tag,
          "T^m(sum d^i v_i) = 0 for divergence-free v_i",
          denom == 0.0 ? t.l2() : t.l2() / denom, tols.kernel, "m=" + std::to_string(m));
  }

  // solenoidal fields annihilate omega-carrying frame monomials
  for (int m = 1; m <= 2; ++m) {
    const TensorField sol = gaussian_phantom(
        suite_phantom(grid, seed_base + 50 + static_cast<std::uint64_t>(m),
                      PhantomSpec::Target::solenoidal),
        grid, m);
    double worst = 0.0;
    const double denom = componentwise_scale(sol, dirs, pgrid, quad);
    for (const auto& ell : multi_indices(grid.dim(), m)) {
      if (ell[grid.dim() - 1] == 0) continue;  // only monomials carrying omega
      Sinogram s_ell(dirs, pgrid);
      for (int d = 0; d < dirs.count(); ++d) {
        const Frame& frame = dirs.frames[static_cast<std::size_t>(d)];
        SymTensor mono = SymTensor::scalar(grid.dim(), 1.0);
        for (int a = 0; a < grid.dim() - 1; ++a)
          mono = sym_product(mono, vec_power(frame.basis[static_cast<std::size_t>(a)], ell[a]));
        mono = sym_product(mono, vec_power(frame.omega, ell[grid.dim() - 1]));
        transform_row(s_ell.row(d), sol, dirs.directions[static_cast<std::size_t>(d)],
                      frame, pgrid, quad, mono, {});
      }
      worst = std::max(worst, s_ell.l2());
    }
    s.add("solenoidal-omega-monomials-m" + std::to_string(m) + tag,
          "integrals of <v, monomials carrying omega> vanish for solenoidal v",
          denom == 0.0 ? worst : worst / denom, tols.omega_monomials,
          "m=" + std::to_string(m));
  }

  // evenness under (w,p) -> (-w,-p): same hyperplane, same quadrature nodes
  {
    const TensorField u = gaussian_phantom(suite_phantom(grid, seed_base + 60), grid, 0);
    std::vector<Vec> both;
    for (int d = 0; d < std::min(dirs.count(), 8); ++d) {
      both.push_back(dirs.directions[static_cast<std::size_t>(d)]);
      both.push_back(scaled(dirs.directions[static_cast<std::size_t>(d)], -1.0));
    }
    const DirectionSet paired = DirectionSet::from_directions(both);
    const Sinogram s_pair = radon_forward(u, paired, pgrid, quad);
    double worst = 0.0;
    for (int d = 0; d < paired.count(); d += 2)
      for (int ip = 0; ip < pgrid.count; ++ip)
        worst = std::max(
            worst, std::abs(s_pair.at(d, ip) - s_pair.at(d + 1, pgrid.count - 1 - ip)));
    const double denom = s_pair.max_abs();
    s.add("evenness" + tag, "s(-w,-p) = s(w,p)", denom == 0.0 ? worst : worst / denom,
          1e-12, tag.empty() ? "n=2" : "n=3");
  }

}

}  // namespace

IdentityReport run_identity_suite(const SuiteConfig& cfg) {
  Suite s{cfg, {}};

  // exact binomial recursion used by the weight-power expansion
  {
    double worst = 0.0;
    for (int k = 1; k <= 12; ++k)
      for (int i = 0; i <= k - 1; ++i)
        worst = std::max(
            worst, std::abs(static_cast<double>((i + 1) * binomial(k, i + 1) +
                                                i * binomial(k, i) - k * binomial(k, i))));
    s.add("binomial-recursion", "(i+1) C(k,i+1) + i C(k,i) = k C(k,i)", worst, 0.5,
          "k<=12");
  }

  {
    const Grid grid2 = Grid::centered(2, cfg.grid_n, cfg.half_extent);
    run_algebraic_identities(s, grid2, "", cfg.seed);
    run_product_rule_identities(s, grid2, cfg.seed + 100);
  }
  {
    const Grid rgrid = Grid::centered(2, cfg.radon_grid_n, cfg.half_extent);
    const int dcount = cfg.directions > 0 ? cfg.directions : 2 * cfg.radon_grid_n;
    const DirectionSet dirs = DirectionSet::half_circle(dcount);
    const PGrid pgrid = PGrid::for_grid(rgrid);
    const TransformTols tols{1e-3, 1e-2, 2e-2, 1e-3, 1e-3,
                             QuadratureSpec{0.25, 1e-7}, ""};
    run_transform_identities(s, rgrid, dirs, pgrid, cfg.seed + 200, tols);
  }
  if (cfg.include_3d) {
    const Grid grid3 = Grid::centered(3, cfg.grid_n3, cfg.half_extent);
    run_algebraic_identities(s, grid3, "-3d", cfg.seed + 300);
    const DirectionSet dirs = DirectionSet::hemisphere(cfg.directions_3d);
    const PGrid pgrid = PGrid::for_grid(grid3);
    const TransformTols tols{1e-2, 5e-2, 5e-2, 2e-2, 2e-2,
                             QuadratureSpec{1.0, 1e-6}, "-3d"};
    run_transform_identities(s, grid3, dirs, pgrid, cfg.seed + 400, tols);
  }

  s.report.all_pass = std::all_of(s.report.items.begin(), s.report.items.end(),
                                  [](const IdentityCheck& c) { return c.pass; });
  std::ostringstream cfgs;
  cfgs << "seed=" << cfg.seed << " grid=" << cfg.grid_n
       << " radon_grid=" << cfg.radon_grid_n
       << " dirs=" << (cfg.directions > 0 ? cfg.directions : 2 * cfg.radon_grid_n)
       << " 3d=" << (cfg.include_3d ? cfg.grid_n3 : 0) << " tol_scale=" << cfg.tol_scale;
  s.report.config_summary = cfgs.str();
  return s.report;
}

std::string report_text(const IdentityReport& report) {
  std::ostringstream os;
  os << "identity suite [" << report.config_summary << "]\n";
  for (const auto& item : report.items) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-38s %-4s residual %.3e (tol %.1e)\n",
                  item.name.c_str(), item.pass ? "ok" : "FAIL", item.residual,
                  item.tolerance);
    os << buf;
  }
  os << (report.all_pass ? "all identities hold\n" : "FAILURES present\n");
  return os.str();
}

std::string report_csv(const IdentityReport& report) {
  std::ostringstream os;
  os << "name,statement,residual,tolerance,pass,configuration\n";
  for (const auto& item : report.items) {
    os << item.name << ",\"" << item.statement << "\"," << item.residual << ','
       << item.tolerance << ',' << (item.pass ? 1 : 0) << ",\"" << item.configuration
       << "\"\n";
  }
  return os.str();
}

}  // namespace tomo::oracle
