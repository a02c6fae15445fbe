#include "tomo/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "tomo/fft.hpp"

namespace tomo {

namespace {

using cplx = std::complex<double>;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
};

struct Bump {
  Vec center;
  double width;
  double amp;
  // polynomial factor: product over axes of Hermite factors
  // kind per axis: 0 none, 1 linear (x-c)/w, 2 quadratic ((x-c)/w)^2 - 1
  std::vector<int> factor;
};

std::vector<Bump> draw_bumps(Rng& rng, const PhantomSpec& spec, int dim) {
  std::vector<Bump> bumps;
  const int count = spec.centers.empty() ? spec.bumps : static_cast<int>(spec.centers.size());
  for (int b = 0; b < count; ++b) {
    Bump bump;
    if (!spec.centers.empty()) {
      bump.center = spec.centers[static_cast<std::size_t>(b)];
    } else {
      for (int a = 0; a < dim; ++a)
        bump.center.push_back(rng.uniform(-spec.center_radius, spec.center_radius));
    }
    bump.width = !spec.widths.empty()
                     ? spec.widths[static_cast<std::size_t>(b) % spec.widths.size()]
                     : rng.uniform(spec.width_min, spec.width_max);
    bump.amp = rng.uniform(-1.0, 1.0);
    bump.factor.assign(static_cast<std::size_t>(dim), 0);
    // At least one axis carries a zero-integral Hermite factor.
    const int axis = rng.uniform_int(dim);
    const int degree = std::max(1, std::min(spec.poly_degree, 2));
    if (degree == 1) {
      bump.factor[static_cast<std::size_t>(axis)] = 1;
    } else {
      switch (rng.uniform_int(3)) {
        case 0:
          bump.factor[static_cast<std::size_t>(axis)] = 1;
          break;
        case 1:
          bump.factor[static_cast<std::size_t>(axis)] = 2;
          break;
        default: {  // cross term: linear on two distinct axes
          bump.factor[static_cast<std::size_t>(axis)] = 1;
          const int other = (axis + 1 + rng.uniform_int(dim - 1)) % dim;
          bump.factor[static_cast<std::size_t>(other)] = 1;
          break;
        }
      }
    }
    bumps.push_back(std::move(bump));
  }
  return bumps;
}

void add_bumps(std::span<double> out, const Grid& grid, const std::vector<Bump>& bumps) {
  const int dim = grid.dim();
  // Separable per-axis profiles: factor(t) * exp(-t^2 / (2 w^2)).
  for (const Bump& b : bumps) {
    std::vector<std::vector<double>> axis_profile(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      auto& prof = axis_profile[static_cast<std::size_t>(a)];
      prof.resize(static_cast<std::size_t>(grid.shape[static_cast<std::size_t>(a)]));
      for (int i = 0; i < grid.shape[static_cast<std::size_t>(a)]; ++i) {
        const double t = (grid.coord(a, i) - b.center[static_cast<std::size_t>(a)]) / b.width;
        double poly = 1.0;
        if (b.factor[static_cast<std::size_t>(a)] == 1) poly = t;
        if (b.factor[static_cast<std::size_t>(a)] == 2) poly = t * t - 1.0;
        prof[static_cast<std::size_t>(i)] = poly * std::exp(-0.5 * t * t);
      }
    }
    std::size_t node = 0;
    if (dim == 2) {
      for (int i0 = 0; i0 < grid.shape[0]; ++i0) {
        const double p0 = b.amp * axis_profile[0][static_cast<std::size_t>(i0)];
        for (int i1 = 0; i1 < grid.shape[1]; ++i1)
          out[node++] += p0 * axis_profile[1][static_cast<std::size_t>(i1)];
      }
    } else {
      for (int i0 = 0; i0 < grid.shape[0]; ++i0)
        for (int i1 = 0; i1 < grid.shape[1]; ++i1) {
          const double p01 = b.amp * axis_profile[0][static_cast<std::size_t>(i0)] *
                             axis_profile[1][static_cast<std::size_t>(i1)];
          for (int i2 = 0; i2 < grid.shape[2]; ++i2)
            out[node++] += p01 * axis_profile[2][static_cast<std::size_t>(i2)];
        }
    }
  }
}

void add_random_band(std::span<double> out, const Grid& grid, Rng& rng, double amp) {
  const int dim = grid.dim();
  const int modes = 4;
  const double envelope_radius = 2.0;
  std::vector<double> wave(out.size(), 0.0);
  for (int j = 0; j < modes; ++j) {
    std::vector<double> k(static_cast<std::size_t>(dim)), phase(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      k[static_cast<std::size_t>(a)] = rng.uniform(0.5, 2.5);
      phase[static_cast<std::size_t>(a)] = rng.uniform(0.0, 2.0 * M_PI);
    }
    const double a_j = amp * rng.uniform(-1.0, 1.0);
    std::size_t node = 0;
    if (dim == 2) {
      for (int i0 = 0; i0 < grid.shape[0]; ++i0)
        for (int i1 = 0; i1 < grid.shape[1]; ++i1, ++node)
          wave[node] += a_j * std::cos(k[0] * grid.coord(0, i0) + phase[0]) *
                        std::cos(k[1] * grid.coord(1, i1) + phase[1]);
    } else {
      for (int i0 = 0; i0 < grid.shape[0]; ++i0)
        for (int i1 = 0; i1 < grid.shape[1]; ++i1)
          for (int i2 = 0; i2 < grid.shape[2]; ++i2, ++node)
            wave[node] += a_j * std::cos(k[0] * grid.coord(0, i0) + phase[0]) *
                          std::cos(k[1] * grid.coord(1, i1) + phase[1]) *
                          std::cos(k[2] * grid.coord(2, i2) + phase[2]);
    }
  }
  // quartic super-Gaussian envelope and an exact discrete-mean correction
  // against a reference envelope bump
  std::vector<double> envelope(out.size());
  std::size_t node = 0;
  const auto env = [&](double r2) {
    const double q = r2 / (envelope_radius * envelope_radius);
    return std::exp(-q * q);
  };
  if (dim == 2) {
    for (int i0 = 0; i0 < grid.shape[0]; ++i0)
      for (int i1 = 0; i1 < grid.shape[1]; ++i1, ++node) {
        const double x0 = grid.coord(0, i0), x1 = grid.coord(1, i1);
        envelope[node] = env(x0 * x0 + x1 * x1);
      }
  } else {
    for (int i0 = 0; i0 < grid.shape[0]; ++i0)
      for (int i1 = 0; i1 < grid.shape[1]; ++i1)
        for (int i2 = 0; i2 < grid.shape[2]; ++i2, ++node) {
          const double x0 = grid.coord(0, i0), x1 = grid.coord(1, i1), x2 = grid.coord(2, i2);
          envelope[node] = env(x0 * x0 + x1 * x1 + x2 * x2);
        }
  }
  double sum_wave = 0.0, sum_env = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    wave[i] *= envelope[i];
    sum_wave += wave[i];
    sum_env += envelope[i];
  }
  const double correction = sum_env != 0.0 ? sum_wave / sum_env : 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += wave[i] - correction * envelope[i];
}

TensorField raw_phantom(Rng& rng, const PhantomSpec& spec, const Grid& grid, int rank) {
  TensorField f(grid, rank);
  for (int c = 0; c < f.components(); ++c) {
    if (spec.kind == PhantomSpec::Kind::gaussian_poly) {
      const auto bumps = draw_bumps(rng, spec, grid.dim());
      add_bumps(f.component(c), grid, bumps);
    } else {
      add_random_band(f.component(c), grid, rng, 1.0);
    }
  }
  if (spec.amplitude != 0.0 && f.max_abs() > 0.0)
    f *= spec.amplitude / f.max_abs();
  else
    f *= 0.0;
  return f;
}

/// n=3, m=1: curl of a random vector potential (exactly divergence-free).
TensorField curl_phantom(Rng& rng, const PhantomSpec& spec, const Grid& grid) {
  PhantomSpec raw = spec;
  raw.target = PhantomSpec::Target::raw;
  TensorField potential = raw_phantom(rng, raw, grid, 1);
  std::vector<std::vector<cplx>> hat(3);
  for (int c = 0; c < 3; ++c) {
    auto src = potential.component(c);
    hat[static_cast<std::size_t>(c)].assign(src.begin(), src.end());
    fft::forward(grid.shape, hat[static_cast<std::size_t>(c)].data());
  }
  std::vector<std::vector<double>> freq(3);
  for (int a = 0; a < 3; ++a)
    freq[static_cast<std::size_t>(a)] = fft::frequencies(
        grid.shape[static_cast<std::size_t>(a)], grid.spacing[static_cast<std::size_t>(a)]);
  std::vector<std::vector<cplx>> chat(3, std::vector<cplx>(potential.nodes()));
  std::size_t node = 0;
  const cplx iunit{0.0, 1.0};
  for (int i0 = 0; i0 < grid.shape[0]; ++i0)
    for (int i1 = 0; i1 < grid.shape[1]; ++i1)
      for (int i2 = 0; i2 < grid.shape[2]; ++i2, ++node) {
        const double y0 = freq[0][static_cast<std::size_t>(i0)];
        const double y1 = freq[1][static_cast<std::size_t>(i1)];
        const double y2 = freq[2][static_cast<std::size_t>(i2)];
        const cplx a0 = hat[0][node], a1 = hat[1][node], a2 = hat[2][node];
        chat[0][node] = iunit * (y1 * a2 - y2 * a1);
        chat[1][node] = iunit * (y2 * a0 - y0 * a2);
        chat[2][node] = iunit * (y0 * a1 - y1 * a0);
      }
  TensorField s(grid, 1);
  for (int c = 0; c < 3; ++c) {
    fft::inverse(grid.shape, chat[static_cast<std::size_t>(c)].data());
    auto dst = s.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = chat[static_cast<std::size_t>(c)][i].real();
  }
  return s;
}

/// n=3, m=2: s_ij = eps_ipq eps_jrs d_p d_r H_qs for a random symmetric H
/// (exactly divergence-free and symmetric).
TensorField incompatibility_phantom(Rng& rng, const PhantomSpec& spec, const Grid& grid) {
  PhantomSpec raw = spec;
  raw.target = PhantomSpec::Target::raw;
  TensorField h = raw_phantom(rng, raw, grid, 2);
  const auto& table = sym_index_table(3, 2);
  std::vector<std::vector<cplx>> hat(static_cast<std::size_t>(h.components()));
  for (int c = 0; c < h.components(); ++c) {
    auto src = h.component(c);
    hat[static_cast<std::size_t>(c)].assign(src.begin(), src.end());
    fft::forward(grid.shape, hat[static_cast<std::size_t>(c)].data());
  }
  const auto eps = [](int i, int j, int k) -> double {
    return ((j - i) % 3 + 3) % 3 == 1 && ((k - j) % 3 + 3) % 3 == 1
               ? 1.0
               : (i != j && j != k && i != k ? -1.0 : 0.0);
  };
  std::vector<std::vector<double>> freq(3);
  for (int a = 0; a < 3; ++a)
    freq[static_cast<std::size_t>(a)] = fft::frequencies(
        grid.shape[static_cast<std::size_t>(a)], grid.spacing[static_cast<std::size_t>(a)]);
  std::vector<std::vector<cplx>> shat(static_cast<std::size_t>(h.components()),
                                      std::vector<cplx>(h.nodes()));
  std::size_t node = 0;
  for (int i0 = 0; i0 < grid.shape[0]; ++i0)
    for (int i1 = 0; i1 < grid.shape[1]; ++i1)
      for (int i2 = 0; i2 < grid.shape[2]; ++i2, ++node) {
        const Vec y{freq[0][static_cast<std::size_t>(i0)],
                    freq[1][static_cast<std::size_t>(i1)],
                    freq[2][static_cast<std::size_t>(i2)]};
        for (int out_c = 0; out_c < h.components(); ++out_c) {
          const int i = table.tuples[static_cast<std::size_t>(out_c)][0];
          const int j = table.tuples[static_cast<std::size_t>(out_c)][1];
          cplx acc{0.0, 0.0};
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              const double e1 = eps(i, p, q);
              if (e1 == 0.0) continue;
              for (int r = 0; r < 3; ++r)
                for (int s = 0; s < 3; ++s) {
                  const double e2 = eps(j, r, s);
                  if (e2 == 0.0) continue;
                  const std::array<int, 2> qs{std::min(q, s), std::max(q, s)};
                  acc += -e1 * e2 * y[static_cast<std::size_t>(p)] *
                         y[static_cast<std::size_t>(r)] *
                         hat[static_cast<std::size_t>(table.index_of(qs))][node];
                }
            }
          shat[static_cast<std::size_t>(out_c)][node] = acc;
        }
      }
  TensorField s(grid, 2);
  for (int c = 0; c < s.components(); ++c) {
    fft::inverse(grid.shape, shat[static_cast<std::size_t>(c)].data());
    auto dst = s.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = shat[static_cast<std::size_t>(c)][i].real();
  }
  return s;
}

}  // namespace

TensorField solenoidal_from_stream(const TensorField& psi, int rank) {
  if (psi.dim() != 2 || psi.rank() != 0)
    throw ShapeError("solenoidal_from_stream: scalar field in n=2 required");
  const Grid& grid = psi.grid();
  std::vector<cplx> psi_hat(psi.component(0).begin(), psi.component(0).end());
  fft::forward(grid.shape, psi_hat.data());
  const auto& table = sym_index_table(2, rank);
  std::vector<std::vector<double>> freq(2);
  for (int a = 0; a < 2; ++a)
    freq[static_cast<std::size_t>(a)] = fft::frequencies(
        grid.shape[static_cast<std::size_t>(a)], grid.spacing[static_cast<std::size_t>(a)]);
  const int comps = sym_dim(2, rank);
  std::vector<std::vector<cplx>> shat(static_cast<std::size_t>(comps),
                                      std::vector<cplx>(psi.nodes()));
  // i^rank as a complex unit
  cplx iunit_pow{1.0, 0.0};
  for (int r = 0; r < rank; ++r) iunit_pow *= cplx{0.0, 1.0};
  std::size_t node = 0;
  for (int i0 = 0; i0 < grid.shape[0]; ++i0)
    for (int i1 = 0; i1 < grid.shape[1]; ++i1, ++node) {
      const double y0 = freq[0][static_cast<std::size_t>(i0)];
      const double y1 = freq[1][static_cast<std::size_t>(i1)];
      const Vec perp{-y1, y0};
      const cplx base = iunit_pow * psi_hat[node];
      for (int c = 0; c < comps; ++c) {
        double prod = 1.0;
        for (int idx : table.tuples[static_cast<std::size_t>(c)])
          prod *= perp[static_cast<std::size_t>(idx)];
        shat[static_cast<std::size_t>(c)][node] = prod * base;
      }
    }
  TensorField s(grid, rank);
  for (int c = 0; c < comps; ++c) {
    fft::inverse(grid.shape, shat[static_cast<std::size_t>(c)].data());
    auto dst = s.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = shat[static_cast<std::size_t>(c)][i].real();
  }
  return s;
}

TensorField gaussian_phantom(const PhantomSpec& spec, const Grid& grid, int rank) {
  Rng rng(spec.seed);
  TensorField out(grid, rank);
  switch (spec.target) {
    case PhantomSpec::Target::raw:
      out = raw_phantom(rng, spec, grid, rank);
      break;
    case PhantomSpec::Target::solenoidal: {
      if (rank == 0) {
        out = raw_phantom(rng, spec, grid, rank);
        break;
      }
      if (grid.dim() == 2) {
        PhantomSpec stream = spec;
        stream.target = PhantomSpec::Target::raw;
        out = solenoidal_from_stream(raw_phantom(rng, stream, grid, 0), rank);
      } else if (rank == 1) {
        out = curl_phantom(rng, spec, grid);
      } else if (rank == 2) {
        out = incompatibility_phantom(rng, spec, grid);
      } else {
        out = solenoidal_project(raw_phantom(rng, spec, grid, rank));
      }
      if (spec.amplitude != 0.0 && out.max_abs() > 0.0)
        out *= spec.amplitude / out.max_abs();
      else
        out *= 0.0;
      break;
    }
    case PhantomSpec::Target::potential_of_order: {
      const int i = spec.potential_order;
      if (i < 0 || i > rank) throw ShapeError("gaussian_phantom: potential order out of range");
      PhantomSpec inner = spec;
      inner.target = PhantomSpec::Target::raw;
      out = raw_phantom(rng, inner, grid, rank - i);
      for (int a = 0; a < i; ++a) out = d_field(out);
      if (spec.amplitude != 0.0 && out.max_abs() > 0.0)
        out *= spec.amplitude / out.max_abs();
      else
        out *= 0.0;
      break;
    }
  }
  if (spec.amplitude != 0.0 && boundary_fluctuation(out) > kBoundaryTol &&
      spec.target != PhantomSpec::Target::solenoidal)
    throw DecayError("gaussian_phantom: field violates the boundary decay contract");
  return out;
}

}  // namespace tomo
