#include "tomo/scalar_radon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hyperplane_quadrature.hpp"
#include "tomo/fft.hpp"

namespace tomo {

namespace detail {

double support_radius(const TensorField& u) {
  const double thresh = 1e-12 * u.max_abs();
  const Grid& g = u.grid();
  double r2max = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    auto data = u.component(c);
    std::size_t node = 0;
    if (g.dim() == 2) {
      for (int i0 = 0; i0 < g.shape[0]; ++i0) {
        const double x0 = g.coord(0, i0);
        for (int i1 = 0; i1 < g.shape[1]; ++i1, ++node) {
          if (std::abs(data[node]) <= thresh) continue;
          const double x1 = g.coord(1, i1);
          r2max = std::max(r2max, x0 * x0 + x1 * x1);
        }
      }
    } else {
      for (int i0 = 0; i0 < g.shape[0]; ++i0)
        for (int i1 = 0; i1 < g.shape[1]; ++i1)
          for (int i2 = 0; i2 < g.shape[2]; ++i2, ++node) {
            if (std::abs(data[node]) <= thresh) continue;
            const double x0 = g.coord(0, i0), x1 = g.coord(1, i1), x2 = g.coord(2, i2);
            r2max = std::max(r2max, x0 * x0 + x1 * x1 + x2 * x2);
          }
    }
  }
  return std::sqrt(r2max);
}

void require_support_covered(const TensorField& u, const PGrid& pgrid, const char* op) {
  const double r = support_radius(u);
  if (r > pgrid.radius)
    throw ShapeError(std::string(op) + ": p-grid radius " + std::to_string(pgrid.radius) +
                     " does not cover the field support radius " + std::to_string(r));
}

void require_field_decay(const TensorField& u, double boundary_tol, const char* op) {
  if (boundary_tol == kNoDecayCheck) return;
  const double b = boundary_fluctuation(u);
  if (b > boundary_tol)
    throw DecayError(std::string(op) + ": field does not decay at the box boundary");
}

}  // namespace detail

DirectionSet DirectionSet::half_circle(int count) {
  if (count < 1) throw ShapeError("DirectionSet: need at least one direction");
  DirectionSet ds;
  ds.dim = 2;
  for (int i = 0; i < count; ++i) {
    const double theta = M_PI * i / count;
    ds.directions.push_back({std::cos(theta), std::sin(theta)});
    ds.frames.push_back(frame_of(ds.directions.back()));
  }
  return ds;
}

DirectionSet DirectionSet::hemisphere(int count) {
  if (count < 1) throw ShapeError("DirectionSet: need at least one direction");
  DirectionSet ds;
  ds.dim = 3;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < count; ++i) {
    const double z = (i + 0.5) / count;  // upper hemisphere only
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * M_PI * i / golden;
    Vec w{r * std::cos(phi), r * std::sin(phi), z};
    ds.directions.push_back(normalized(w));
    ds.frames.push_back(frame_of(ds.directions.back()));
  }
  return ds;
}

DirectionSet DirectionSet::from_directions(const std::vector<Vec>& dirs) {
  if (dirs.empty()) throw ShapeError("DirectionSet: empty");
  DirectionSet ds;
  ds.dim = static_cast<int>(dirs.front().size());
  for (const Vec& w : dirs) {
    // keep the caller's bits: renormalizing would break byte-exact file
    // roundtrips; frame_of validates unit length anyway
    ds.directions.push_back(w);
    ds.frames.push_back(frame_of(w));
  }
  return ds;
}

PGrid PGrid::for_grid(const Grid& grid, double pad) {
  PGrid pg;
  pg.radius = grid.circumradius() * pad;
  pg.count = 2 * static_cast<int>(std::ceil(pg.radius / grid.min_spacing())) + 1;
  return pg;
}

Sinogram& Sinogram::operator+=(const Sinogram& o) {
  if (data.size() != o.data.size()) throw ShapeError("Sinogram +=: shape mismatch");
  for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
  return *this;
}

Sinogram& Sinogram::operator-=(const Sinogram& o) {
  if (data.size() != o.data.size()) throw ShapeError("Sinogram -=: shape mismatch");
  for (std::size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
  return *this;
}

Sinogram& Sinogram::operator*=(double s) {
  for (double& v : data) v *= s;
  return *this;
}

double Sinogram::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

double Sinogram::l2() const {
  double s = 0.0;
  for (double v : data) s += v * v;
  return std::sqrt(s * pgrid.spacing() / std::max(1, dirs.count()));
}

Sinogram radon_forward(const TensorField& u, const DirectionSet& dirs,
                       const PGrid& pgrid, const QuadratureSpec& quad) {
  if (u.rank() != 0) throw ShapeError("radon_forward: scalar field required");
  if (dirs.dim != u.dim()) throw ShapeError("radon_forward: dimension mismatch");
  detail::require_field_decay(u, quad.boundary_tol, "radon_forward");
  detail::require_support_covered(u, pgrid, "radon_forward");
  Sinogram s(dirs, pgrid);
  const auto comp = u.component(0);
  parallel_for(static_cast<std::size_t>(dirs.count()), [&](std::size_t d) {
    auto row = s.row(static_cast<int>(d));
    detail::sample_hyperplanes(
        u.grid(), dirs.directions[d], dirs.frames[d], pgrid, quad.step_factor,
        quad.interp_order,
        [&](int ip, const detail::Interp& interp, const double*, double dvol) {
          row[static_cast<std::size_t>(ip)] += dvol * interp.gather(comp);
        });
  });
  return s;
}

namespace {

int padded_length(int count) {
  int m = 1;
  while (m < 2 * count) m <<= 1;
  return m;
}

/// Applies a spectral multiplier along p to each direction row.
/// multiplier(sigma) -> complex factor.
template <typename Mult>
Sinogram filter_rows(const Sinogram& s, Mult&& multiplier) {
  const int pcount = s.pgrid.count;
  const int m = padded_length(pcount);
  const std::vector<double> sigma = fft::frequencies(m, s.pgrid.spacing());
  Sinogram out = s;
  parallel_for(static_cast<std::size_t>(s.dirs.count()), [&](std::size_t d) {
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(m), {0.0, 0.0});
    auto row = s.row(static_cast<int>(d));
    for (int i = 0; i < pcount; ++i) buf[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i)];
    const int shape[1] = {m};
    fft::forward(shape, buf.data());
    for (int i = 0; i < m; ++i) buf[static_cast<std::size_t>(i)] *= multiplier(sigma[static_cast<std::size_t>(i)]);
    fft::inverse(shape, buf.data());
    auto dst = out.row(static_cast<int>(d));
    for (int i = 0; i < pcount; ++i) dst[static_cast<std::size_t>(i)] = buf[static_cast<std::size_t>(i)].real();
  });
  return out;
}

}  // namespace

Sinogram p_derivative(const Sinogram& s, int order, double window_cutoff) {
  if (order < 1) throw ShapeError("p_derivative: order must be >= 1");
  const double nyquist = M_PI / s.pgrid.spacing();
  return filter_rows(s, [&](double sigma) {
    std::complex<double> f{1.0, 0.0};
    const std::complex<double> is{0.0, sigma};
    for (int j = 0; j < order; ++j) f *= is;
    return f * detail::rolloff(sigma, nyquist, window_cutoff);
  });
}

TensorField radon_invert(const Sinogram& s, const Grid& grid, double window_cutoff) {
  if (s.dirs.dim != 2 || grid.dim() != 2)
    throw ShapeError("radon_invert: only n = 2 is supported");
  const double nyquist = M_PI / s.pgrid.spacing();
  Sinogram filtered = filter_rows(s, [&](double sigma) {
    return std::complex<double>{std::abs(sigma) * detail::rolloff(sigma, nyquist, window_cutoff), 0.0};
  });
  TensorField out(grid, 0);
  auto dst = out.component(0);
  const int dcount = s.dirs.count();
  const int pcount = s.pgrid.count;
  const double pmin = -s.pgrid.radius;
  const double inv_dp = 1.0 / s.pgrid.spacing();
  const double scale = 1.0 / (2.0 * dcount);
  const int n1 = grid.shape[1];
  parallel_for(static_cast<std::size_t>(grid.shape[0]), [&](std::size_t i0) {
    const double x0 = grid.coord(0, static_cast<int>(i0));
    for (int i1 = 0; i1 < n1; ++i1) {
      const double x1 = grid.coord(1, i1);
      double acc = 0.0;
      for (int d = 0; d < dcount; ++d) {
        const Vec& w = s.dirs.directions[static_cast<std::size_t>(d)];
        const double p = x0 * w[0] + x1 * w[1];
        const double gp = (p - pmin) * inv_dp;
        const int ip = static_cast<int>(std::floor(gp));
        if (ip < 0 || ip >= pcount - 1) continue;
        const double f = gp - ip;
        const auto row = filtered.row(d);
        acc += (1.0 - f) * row[static_cast<std::size_t>(ip)] + f * row[static_cast<std::size_t>(ip) + 1];
      }
      dst[i0 * static_cast<std::size_t>(n1) + static_cast<std::size_t>(i1)] = acc * scale;
    }
  });
  return out;
}

double p_integral(const Sinogram& s, int direction) {
  const auto row = s.row(direction);
  double sum = 0.0;
  for (double v : row) sum += v;
  sum -= 0.5 * (row.front() + row.back());
  return sum * s.pgrid.spacing();
}

}  // namespace tomo
