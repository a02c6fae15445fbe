// Acceptance suite: one line per criterion, exit nonzero when any fails.
// Every tolerance and scale is pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "tomo/decomposition.hpp"
#include "tomo/experiments.hpp"
#include "tomo/oracle.hpp"
#include "tomo/phantom.hpp"
#include "tomo/reconstruction.hpp"

using namespace tomo;

namespace {

struct Criterion {
  int index;
  const char* name;
  double seconds_budget;
  bool pass;
  double worst;
  double tolerance;
  double seconds;
};

std::vector<Criterion> results;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void record(int index, const char* name, double budget, double worst, double tol,
            const Timer& timer) {
  const double secs = timer.seconds();
  const bool pass = worst <= tol && secs <= budget;
  results.push_back({index, name, budget, pass, worst, tol, secs});
  std::printf("[%2d/11] %-4s %-34s worst %.3e (tol %.1e)  %5.1fs (budget %.0fs)\n", index,
              pass ? "PASS" : "FAIL", name, worst, tol, secs, budget);
  std::fflush(stdout);
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) {
    return a + (b - a) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  }
  int uniform_int(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  Vec vec(int n) {
    Vec v(static_cast<std::size_t>(n));
    for (double& x : v) x = uniform(-1.0, 1.0);
    return v;
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

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

PhantomSpec phantom_spec(std::uint64_t seed,
                         PhantomSpec::Target target = PhantomSpec::Target::raw) {
  PhantomSpec spec;
  spec.seed = seed;
  spec.target = target;
  spec.center_radius = 1.0;
  spec.width_min = 0.30;
  spec.width_max = 0.40;
  return spec;
}

std::vector<TensorField> truth_components(const Grid& grid, int m, std::uint64_t seed) {
  return balanced_truth_components(grid, m, seed);
}

double sino_rel(const Sinogram& a, const Sinogram& b) {
  Sinogram diff = a;
  diff -= b;
  const double nb = b.l2();
  return nb == 0.0 ? diff.l2() : diff.l2() / nb;
}

// 1. algebra against the dense reference, 200 seeded instances
void criterion_algebra() {
  Timer timer;
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.uniform_int(3);
    const int m = rng.uniform_int(5);
    const auto dense = rng.dense(n, m);
    worst = std::max(worst, max_diff(to_dense(symmetrize(dense, n, m)),
                                     oracle::dense_symmetrize(dense, n, m)));
    const int pb = rng.uniform_int(5 - m);  // keep pa + pb <= 4
    const SymTensor a = rng.tensor(n, m), b = rng.tensor(n, pb);
    worst = std::max(worst, max_diff(to_dense(sym_product(a, b)),
                                     oracle::dense_sym_product(to_dense(a), m, to_dense(b),
                                                               pb, n)));
    const Vec x = rng.vec(n);
    if (m + 1 <= 4)
      worst = std::max(worst, max_diff(to_dense(i_vec(x, a)),
                                       oracle::dense_i_vec(x, to_dense(a), n, m)));
    if (m >= 1)
      worst = std::max(worst, max_diff(to_dense(j_vec(x, a)),
                                       oracle::dense_j_vec(x, to_dense(a), n, m)));
    // frame expansion roundtrip
    Vec w = rng.vec(n);
    while (norm(w) < 1e-3) w = rng.vec(n);
    const auto basis = frame_monomials(frame_of(normalized(w)), m);
    const SymTensor round = reconstruct_from_frame(expand_in_frame(a, basis), basis);
    worst = std::max(worst, max_diff(round.coeffs(), a.coeffs()));
  }
  record(1, "algebra-dense-oracle", 10, worst, 1e-12, timer);
}

// 2. div d = 1/(m+1) lap + m/(m+1) d div at 128^2
void criterion_divd_split() {
  Timer timer;
  const Grid grid = Grid::centered(2, 128, 5.0);
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const TensorField v = gaussian_phantom(phantom_spec(7 + static_cast<std::uint64_t>(m)), grid, m);
    const TensorField lhs = div_field(d_field(v));
    TensorField rhs = laplacian_field(v);
    rhs *= 1.0 / (m + 1);
    TensorField dd = d_field(div_field(v));
    dd *= static_cast<double>(m) / (m + 1);
    rhs += dd;
    worst = std::max(worst, l2_error(lhs, rhs));
  }
  record(2, "divd-splitting-identity", 30, worst, 1e-8, timer);
}

// 3. solenoidal chains die one divergence later
void criterion_solenoidal_chain() {
  Timer timer;
  const Grid grid = Grid::centered(2, 128, 5.0);
  double worst = 0.0;
  for (int m = 1; m <= 2; ++m)
    for (int l = 1; l <= 2; ++l) {
      const TensorField s = gaussian_phantom(
          phantom_spec(100 + static_cast<std::uint64_t>(10 * m + l),
                       PhantomSpec::Target::solenoidal),
          grid, m);
      TensorField chain = s;
      for (int a = 0; a < l; ++a) chain = d_field(chain, kNoDecayCheck);
      for (int a = 0; a < l + 1; ++a) chain = div_field(chain, kNoDecayCheck);
      const TensorField raw = gaussian_phantom(
          phantom_spec(200 + static_cast<std::uint64_t>(10 * m + l)), grid, m);
      TensorField ref = raw;
      for (int a = 0; a < l; ++a) ref = d_field(ref, kNoDecayCheck);
      for (int a = 0; a < l + 1; ++a) ref = div_field(ref, kNoDecayCheck);
      worst = std::max(worst, l2_norm(chain) / l2_norm(ref));
    }
  record(3, "solenoidal-divergence-chain", 60, worst, 1e-6, timer);
}

// 4. kernel theorems at 256^2, 360 directions
void criterion_kernels() {
  Timer timer;
  const Grid grid = Grid::centered(2, 256, 5.0);
  const DirectionSet dirs = DirectionSet::half_circle(360);
  const PGrid pgrid = PGrid::for_grid(grid);
  const QuadratureSpec quad{0.5, 1e-7};
  double worst = 0.0;
  for (int m = 1; m <= 2; ++m) {
    PhantomSpec pot = phantom_spec(300 + static_cast<std::uint64_t>(m),
                                   PhantomSpec::Target::potential_of_order);
    pot.potential_order = 1;
    const TensorField f = gaussian_phantom(pot, grid, m);
    const TensorSinogram cw = componentwise_radon(f, dirs, pgrid, quad);
    double scale = 0.0;
    for (int c = 0; c < cw.components(); ++c) scale = std::max(scale, cw.component(c).l2());
    for (const auto& ell : dataset_indices(TransformFamily::lrt, 2, m, 0))
      worst = std::max(worst, lrt(f, ell, dirs, pgrid, quad).l2() / scale);

    TensorField stack(grid, m);
    for (int i = 0; i < m; ++i) {
      TensorField lifted = gaussian_phantom(
          phantom_spec(400 + static_cast<std::uint64_t>(10 * m + i),
                       PhantomSpec::Target::solenoidal),
          grid, m - i);
      for (int a = 0; a < i; ++a) lifted = d_field(lifted, kNoDecayCheck);
      stack += lifted;
    }
    const TensorSinogram cw2 = componentwise_radon(stack, dirs, pgrid, quad);
    double scale2 = 0.0;
    for (int c = 0; c < cw2.components(); ++c) scale2 = std::max(scale2, cw2.component(c).l2());
    worst = std::max(worst, trt(stack, dirs, pgrid, quad).l2() / scale2);
  }
  record(4, "kernel-theorems", 120, worst, 1e-3, timer);
}

// 5. R(div^m g) = d^m/dp^m T^m g at 256^2
void criterion_divergence_duality() {
  Timer timer;
  const Grid grid = Grid::centered(2, 256, 5.0);
  const DirectionSet dirs = DirectionSet::half_circle(360);
  const PGrid pgrid = PGrid::for_grid(grid);
  const QuadratureSpec quad{0.5, 1e-7};
  double worst = 0.0;
  for (int m = 1; m <= 2; ++m) {
    const TensorField g = gaussian_phantom(phantom_spec(500 + static_cast<std::uint64_t>(m)),
                                           grid, m);
    const Sinogram lhs = radon_forward(oracle::brute_delta_power(g, m), dirs, pgrid, quad);
    const Sinogram rhs = p_derivative(trt(g, dirs, pgrid, quad), m);
    worst = std::max(worst, sino_rel(lhs, rhs));
  }
  record(5, "divergence-transversal-duality", 120, worst, 2e-2, timer);
}

// 6. weight-power closed forms against brute divergence chains
void criterion_weight_power() {
  Timer timer;
  const Grid grid = Grid::centered(2, 128, 5.0);
  const Vec a{0.6, -0.8};
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int k = 1; k <= m; ++k) {
      const TensorField f = gaussian_phantom(
          phantom_spec(600 + static_cast<std::uint64_t>(10 * m + k)), grid, m);
      const TensorField g = multiply_linear_weight(f, a, k);
      const TensorField lhs = oracle::brute_delta_power(g, m, kNoDecayCheck);
      TensorField rhs(grid, 0);
      for (int i = 0; i < k; ++i) {
        TensorField term = contract_power(
            oracle::brute_delta_power(f, m - (k - i), kNoDecayCheck), a, k - i);
        term *= static_cast<double>(binomial(k, i)) * falling_factorial(m, k - i);
        if (i > 0) term = multiply_linear_weight(term, a, i);
        rhs += term;
      }
      rhs += multiply_linear_weight(oracle::brute_delta_power(f, m, kNoDecayCheck), a, k);
      worst = std::max(worst, l2_error(lhs, rhs));
    }
  record(6, "weighted-divergence-closed-forms", 60, worst, 1e-6, timer);
}

// 7/8. pipelines at 256^2, 360 directions
double run_pipeline(TransformFamily base, int m, std::uint64_t seed, double* composed_error) {
  const Grid grid = Grid::centered(2, 256, 5.0);
  const DirectionSet dirs = DirectionSet::half_circle(360);
  const PGrid pgrid = PGrid::for_grid(grid);
  const QuadratureSpec quad{0.5, 1e-7};
  const auto vs = truth_components(grid, m, seed);
  const TensorField f = compose_potentials(vs);
  const TransformData data = forward_data(f, base, dirs, pgrid, quad);
  const ReconstructionReport report =
      base == TransformFamily::lrt ? reconstruct_from_lrt(data, grid, m, &vs, &f)
                                   : reconstruct_from_trt(data, grid, m, &vs, &f);
  *composed_error = report.composed_error;
  double worst_component = 0.0;
  for (double e : report.component_errors) worst_component = std::max(worst_component, e);
  return worst_component;
}

void criterion_lrt_pipeline() {
  Timer timer;
  double e1 = 0.0, e2 = 0.0;
  run_pipeline(TransformFamily::lrt, 1, 700, &e1);
  run_pipeline(TransformFamily::lrt, 2, 710, &e2);
  std::printf("        longitudinal composed errors: m=1 %.4f (tol 0.05), m=2 %.4f (tol 0.08)\n",
              e1, e2);
  const double worst = std::max(e1 / 0.05, e2 / 0.08);  // normalized to 1
  record(7, "longitudinal-pipeline", 300, worst, 1.0, timer);
}

void criterion_trt_pipeline() {
  Timer timer;
  double e1 = 0.0, e2 = 0.0;
  run_pipeline(TransformFamily::trt, 1, 800, &e1);
  run_pipeline(TransformFamily::trt, 2, 810, &e2);
  std::printf("        transversal composed errors: m=1 %.4f (tol 0.06), m=2 %.4f (tol 0.12)\n",
              e1, e2);
  const double worst = std::max(e1 / 0.06, e2 / 0.12);
  record(8, "transversal-pipeline", 300, worst, 1.0, timer);
}

// 9. decomposition roundtrip at m = 2
void criterion_decomposition() {
  Timer timer;
  const Grid grid = Grid::centered(2, 128, 5.0);
  const auto vs = truth_components(grid, 2, 900);
  const TensorField f = compose_potentials(vs);
  const DecompositionResult result = decompose(f);
  double worst = result.residual;
  for (int i = 0; i <= 2; ++i)
    worst = std::max(worst, l2_error(result.components[static_cast<std::size_t>(i)],
                                     vs[static_cast<std::size_t>(i)]));
  record(9, "decomposition-roundtrip", 60, worst, 1e-3, timer);
}

// 10. scalar transform: analytic Gaussian + filtered backprojection roundtrip
void criterion_scalar_radon() {
  Timer timer;
  // analytic match: the specified bilinear+trapezoid rule carries O(h^2)
  // bias, which crosses 1e-4 between 256^2 (2.4e-4) and 512^2 (6e-5)
  const Grid fine = Grid::centered(2, 512, 5.0);
  const DirectionSet dirs16 = DirectionSet::half_circle(16);
  const PGrid pfine = PGrid::for_grid(fine);
  TensorField gauss(fine, 0);
  {
    auto dst = gauss.component(0);
    for (std::size_t node = 0; node < gauss.nodes(); ++node) {
      const Vec x = fine.node(node);
      dst[node] = std::exp(-dot(x, x));
    }
  }
  const Sinogram s = radon_forward(gauss, dirs16, pfine, QuadratureSpec{0.25, 1e-6});
  Sinogram expect = s;
  for (int d = 0; d < dirs16.count(); ++d)
    for (int ip = 0; ip < pfine.count; ++ip) {
      const double p = pfine.p(ip);
      expect.at(d, ip) = std::sqrt(M_PI) * std::exp(-p * p);
    }
  const double analytic = sino_rel(s, expect);

  const Grid grid = Grid::centered(2, 256, 5.0);
  const DirectionSet dirs = DirectionSet::half_circle(360);
  const PGrid pgrid = PGrid::for_grid(grid);
  const TensorField phantom = gaussian_phantom(phantom_spec(1000), grid, 0);
  const Sinogram sp = radon_forward(phantom, dirs, pgrid, QuadratureSpec{0.25, 1e-7});
  const double roundtrip = l2_error(radon_invert(sp, grid), phantom);
  std::printf("        analytic %.3e (tol 1e-4), roundtrip %.4f (tol 0.01)\n", analytic,
              roundtrip);
  record(10, "scalar-radon", 30, std::max(analytic / 1e-4, roundtrip / 1e-2), 1.0, timer);
}

// 11. error decreases across 64 -> 128 -> 256 for the m = 1 pipeline
void criterion_convergence() {
  Timer timer;
  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true;
  double errors[3] = {0, 0, 0};
  int idx = 0;
  for (const int gn : {64, 128, 256}) {
    const Grid grid = Grid::centered(2, gn, 5.0);
    const DirectionSet dirs = DirectionSet::half_circle(2 * gn);
    const PGrid pgrid = PGrid::for_grid(grid);
    const QuadratureSpec quad{0.5, 1e-6};
    const auto vs = truth_components(grid, 1, 1100);
    const TensorField f = compose_potentials(vs, 1e-6);  // 64^2 sits above the strict floor
    const TransformData data = forward_data(f, TransformFamily::lrt, dirs, pgrid, quad);
    const ReconstructionReport report = reconstruct_from_lrt(data, grid, 1, &vs, &f);
    errors[idx++] = report.composed_error;
    if (!(report.composed_error < previous)) monotone = false;
    previous = report.composed_error;
  }
  std::printf("        composed errors across grids: %.4f -> %.4f -> %.4f\n", errors[0],
              errors[1], errors[2]);
  record(11, "pipeline-convergence", 600, monotone ? 0.0 : 1.0, 0.5, timer);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_algebra();
  criterion_divd_split();
  criterion_solenoidal_chain();
  criterion_kernels();
  criterion_divergence_duality();
  criterion_weight_power();
  criterion_lrt_pipeline();
  criterion_trt_pipeline();
  criterion_decomposition();
  criterion_scalar_radon();
  criterion_convergence();

  int failures = 0;
  for (const auto& c : results)
    if (!c.pass) ++failures;
  std::printf("%d/11 criteria pass\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
