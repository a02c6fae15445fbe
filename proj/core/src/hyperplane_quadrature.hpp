// Internal: shared plane-integral sampling so every transform family uses
// identical quadrature nodes (two-path identities then agree to roundoff).
#pragma once

#include <cmath>

#include "tomo/scalar_radon.hpp"

namespace tomo::detail {

/// Interpolation context at one sample point; components are gathered with
/// the same node weights. Holds up to 16 nodes (2-d cubic).
struct Interp {
  int corners = 0;
  std::size_t index[16];
  double weight[16];

  double gather(std::span<const double> comp) const {
    double v = 0.0;
    for (int c = 0; c < corners; ++c) v += weight[c] * comp[index[c]];
    return v;
  }
};

inline void make_interp2(const Grid& g, double x0, double x1, Interp& out) {
  out.corners = 0;
  const double g0 = (x0 - g.origin[0]) / g.spacing[0];
  const double g1 = (x1 - g.origin[1]) / g.spacing[1];
  const int i0 = static_cast<int>(std::floor(g0));
  const int i1 = static_cast<int>(std::floor(g1));
  if (i0 < -1 || i0 >= g.shape[0] || i1 < -1 || i1 >= g.shape[1]) return;
  const double f0 = g0 - i0, f1 = g1 - i1;
  const double w0[2] = {1.0 - f0, f0};
  const double w1[2] = {1.0 - f1, f1};
  const auto n1 = static_cast<std::size_t>(g.shape[1]);
  for (int a = 0; a < 2; ++a) {
    const int j0 = i0 + a;
    if (j0 < 0 || j0 >= g.shape[0]) continue;
    for (int b = 0; b < 2; ++b) {
      const int j1 = i1 + b;
      if (j1 < 0 || j1 >= g.shape[1]) continue;
      out.index[out.corners] = static_cast<std::size_t>(j0) * n1 + static_cast<std::size_t>(j1);
      out.weight[out.corners] = w0[a] * w1[b];
      ++out.corners;
    }
  }
}

inline void make_interp3(const Grid& g, double x0, double x1, double x2, Interp& out) {
  out.corners = 0;
  const double gc[3] = {(x0 - g.origin[0]) / g.spacing[0],
                        (x1 - g.origin[1]) / g.spacing[1],
                        (x2 - g.origin[2]) / g.spacing[2]};
  int base[3];
  double frac[3];
  for (int a = 0; a < 3; ++a) {
    base[a] = static_cast<int>(std::floor(gc[a]));
    if (base[a] < -1 || base[a] >= g.shape[static_cast<std::size_t>(a)]) return;
    frac[a] = gc[a] - base[a];
  }
  const auto n1 = static_cast<std::size_t>(g.shape[1]);
  const auto n2 = static_cast<std::size_t>(g.shape[2]);
  for (int a = 0; a < 2; ++a) {
    const int j0 = base[0] + a;
    if (j0 < 0 || j0 >= g.shape[0]) continue;
    const double wa = a ? frac[0] : 1.0 - frac[0];
    for (int b = 0; b < 2; ++b) {
      const int j1 = base[1] + b;
      if (j1 < 0 || j1 >= g.shape[1]) continue;
      const double wb = b ? frac[1] : 1.0 - frac[1];
      for (int c = 0; c < 2; ++c) {
        const int j2 = base[2] + c;
        if (j2 < 0 || j2 >= g.shape[2]) continue;
        out.index[out.corners] =
            (static_cast<std::size_t>(j0) * n1 + static_cast<std::size_t>(j1)) * n2 +
            static_cast<std::size_t>(j2);
        out.weight[out.corners] = wa * wb * (c ? frac[2] : 1.0 - frac[2]);
        ++out.corners;
      }
    }
  }
}

/// 4-point Lagrange-cubic weights on nodes {-1,0,1,2} at fraction f.
inline void cubic_weights(double f, double* w) {
  const double fm = f - 1.0, fp = f + 1.0, f2 = f - 2.0;
  w[0] = -f * fm * f2 / 6.0;
  w[1] = fp * fm * f2 / 2.0;
  w[2] = -fp * f * f2 / 2.0;
  w[3] = fp * f * fm / 6.0;
}

/// Out-of-range nodes contribute zero (the field has decayed there).
inline void make_interp2_cubic(const Grid& g, double x0, double x1, Interp& out) {
  out.corners = 0;
  const double g0 = (x0 - g.origin[0]) / g.spacing[0];
  const double g1 = (x1 - g.origin[1]) / g.spacing[1];
  const int i0 = static_cast<int>(std::floor(g0));
  const int i1 = static_cast<int>(std::floor(g1));
  if (i0 < -2 || i0 > g.shape[0] || i1 < -2 || i1 > g.shape[1]) return;
  double w0[4], w1[4];
  cubic_weights(g0 - i0, w0);
  cubic_weights(g1 - i1, w1);
  const auto n1 = static_cast<std::size_t>(g.shape[1]);
  for (int a = 0; a < 4; ++a) {
    const int j0 = i0 - 1 + a;
    if (j0 < 0 || j0 >= g.shape[0]) continue;
    for (int b = 0; b < 4; ++b) {
      const int j1 = i1 - 1 + b;
      if (j1 < 0 || j1 >= g.shape[1]) continue;
      const double w = w0[a] * w1[b];
      if (w == 0.0) continue;
      out.index[out.corners] = static_cast<std::size_t>(j0) * n1 + static_cast<std::size_t>(j1);
      out.weight[out.corners] = w;
      ++out.corners;
    }
  }
}

/// Integrates over the hyperplane (omega, p) for every p of the pgrid.
/// `fn(ip, interp, t, dvol)` is called per sample; t holds the in-plane
/// coordinates of the sample (t[0] along frame.basis[0], ...), dvol the
/// quadrature weight. Accumulation happens in the callback.
template <typename Fn>
void sample_hyperplanes(const Grid& grid, const Vec& omega, const Frame& frame,
                        const PGrid& pgrid, double step_factor, int interp_order,
                        Fn&& fn) {
  const int n = grid.dim();
  const double dt = step_factor * grid.min_spacing();
  const double reach = grid.circumradius();
  const int half = static_cast<int>(std::ceil(reach / dt));
  Interp interp;
  if (n == 2) {
    const Vec& b = frame.basis[0];
    const bool cubic = interp_order >= 3;
    for (int ip = 0; ip < pgrid.count; ++ip) {
      const double p = pgrid.p(ip);
      const double cx = p * omega[0], cy = p * omega[1];
      for (int it = -half; it <= half; ++it) {
        const double t = it * dt;
        if (cubic)
          make_interp2_cubic(grid, cx + t * b[0], cy + t * b[1], interp);
        else
          make_interp2(grid, cx + t * b[0], cy + t * b[1], interp);
        if (interp.corners == 0) continue;
        fn(ip, interp, &t, dt);
      }
    }
  } else {
    const Vec& b1 = frame.basis[0];
    const Vec& b2 = frame.basis[1];
    double t[2];
    for (int ip = 0; ip < pgrid.count; ++ip) {
      const double p = pgrid.p(ip);
      const double cx = p * omega[0], cy = p * omega[1], cz = p * omega[2];
      for (int it1 = -half; it1 <= half; ++it1) {
        t[0] = it1 * dt;
        const double mx = cx + t[0] * b1[0];
        const double my = cy + t[0] * b1[1];
        const double mz = cz + t[0] * b1[2];
        for (int it2 = -half; it2 <= half; ++it2) {
          t[1] = it2 * dt;
          make_interp3(grid, mx + t[1] * b2[0], my + t[1] * b2[1], mz + t[1] * b2[2], interp);
          if (interp.corners == 0) continue;
          fn(ip, interp, t, dt * dt);
        }
      }
    }
  }
}

/// Largest |x| over nodes carrying more than 1e-12 of the field's peak.
double support_radius(const TensorField& u);

void require_support_covered(const TensorField& u, const PGrid& pgrid, const char* op);

void require_field_decay(const TensorField& u, double boundary_tol, const char* op);

/// Cosine rolloff: 1 below cutoff * limit, half-cosine down to 0 at limit.
inline double rolloff(double value, double limit, double cutoff) {
  const double a = std::abs(value) / limit;
  if (a <= cutoff) return 1.0;
  if (a >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(M_PI * (a - cutoff) / (1.0 - cutoff)));
}

}  // namespace tomo::detail
