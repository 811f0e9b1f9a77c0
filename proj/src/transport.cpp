#include "otlab/transport.hpp"

#include <algorithm>
#include <cmath>

namespace otlab {

Quantile1DMap quantile_map(const GridDensity1D& mu0,
                           const GridDensity1D& mu1) {
  auto [a, b] = mu0.support();
  std::vector<double> F0 = cdf_at_edges(mu0);
  std::vector<double> F1 = cdf_at_edges(mu1);
  const Grid1D& g1 = mu1.grid;
  double h0 = mu0.grid.h();

  Quantile1DMap map;
  map.source_grid = mu0.grid;
  map.first = a;
  map.last = b;
  map.T.resize(b - a + 1);

  int j = 0;  // F1 is scanned once; s is nondecreasing
  for (int i = a; i <= b; ++i) {
    double s = F0[i] + 0.5 * h0 * mu0.v[i];
    s = std::min(s, 1.0);
    while (j < g1.n && F1[j + 1] < s) ++j;
    // left-continuous inverse: first cell whose edge cdf reaches s
    while (j > 0 && F1[j] >= s && F1[j] == F1[j - 1]) --j;
    double num = s - F1[j], den = F1[j + 1] - F1[j];
    double frac = den > 0.0 ? num / den : 0.0;
    map.T[i - a] = g1.edge(j) + std::clamp(frac, 0.0, 1.0) * g1.h();
  }
  for (int k = 1; k < map.size(); ++k)
    if (map.T[k] < map.T[k - 1] - 1e-12)
      throw NonMonotoneMapError("quantile map lost monotonicity");

  map.dT.resize(map.size());
  int m = map.size();
  for (int k = 0; k < m; ++k) {
    double d;
    if (m == 1)
      d = 1.0;
    else if (k == 0)
      d = (map.T[1] - map.T[0]) / h0;
    else if (k == m - 1)
      d = (map.T[m - 1] - map.T[m - 2]) / h0;
    else
      d = (map.T[k + 1] - map.T[k - 1]) / (2.0 * h0);
    map.dT[k] = std::max(d, 0.0);
  }

  double c = 0.0;
  for (int k = 0; k < m; ++k) {
    double d = map.T[k] - map.x(k);
    c += d * d * mu0.v[a + k];
  }
  map.w2 = std::sqrt(c * h0);
  return map;
}

double w2_1d(const GridDensity1D& mu0, const GridDensity1D& mu1) {
  return quantile_map(mu0, mu1).w2;
}

namespace {

// linear interpolation of samples (xs ascending, ys) with zero extension
double interp_or_zero(const std::vector<double>& xs,
                      const std::vector<double>& ys, double x) {
  if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  std::size_t k = it - xs.begin();
  double x0 = xs[k - 1], x1 = xs[k];
  if (x1 <= x0) return ys[k];
  double w = (x - x0) / (x1 - x0);
  return (1.0 - w) * ys[k - 1] + w * ys[k];
}

}  // namespace

GridDensity1D interpolate(const Quantile1DMap& map, const GridDensity1D& mu0,
                          double t, const Grid1D& out_grid) {
  if (t < 0.0 || t > 1.0) throw UnsupportedError("t outside [0,1]");
  int m = map.size();
  std::vector<double> y(m), dens(m);
  for (int k = 0; k < m; ++k) {
    y[k] = (1.0 - t) * map.x(k) + t * map.T[k];
    double dTt = (1.0 - t) + t * map.dT[k];
    dens[k] = mu0.v[map.first + k] / std::max(dTt, 1e-12);
  }
  std::vector<double> out(out_grid.n);
  for (int i = 0; i < out_grid.n; ++i)
    out[i] = interp_or_zero(y, dens, out_grid.center(i));
  return GridDensity1D(out_grid, std::move(out));
}

std::vector<double> uniform_time_grid(int points) {
  if (points < 2) throw UnsupportedError("time grid needs >= 2 points");
  std::vector<double> t(points);
  for (int k = 0; k < points; ++k) t[k] = double(k) / (points - 1);
  return t;
}

GeodesicPath interpolate_path(const GridDensity1D& mu0,
                              const GridDensity1D& mu1,
                              const std::vector<double>& t_grid,
                              const Grid1D& out_grid) {
  GeodesicPath path;
  path.map = quantile_map(mu0, mu1);
  path.mu0 = mu0;
  path.t = t_grid;
  path.w2 = path.map.w2;
  path.rho.reserve(t_grid.size());
  for (double t : t_grid)
    path.rho.push_back(interpolate(path.map, mu0, t, out_grid));
  return path;
}

VelocityPotential velocity_potential(const Quantile1DMap& map,
                                     const GridDensity1D& mu0,
                                     const std::vector<double>& t_grid) {
  int m = map.size();
  int nt = (int)t_grid.size();
  VelocityPotential vp;
  vp.t = t_grid;
  vp.y.assign(nt, std::vector<double>(m));
  vp.vel.assign(nt, std::vector<double>(m));
  vp.dvel.assign(nt, std::vector<double>(m));
  vp.theta.assign(nt, std::vector<double>(m));

  // reference particle: the source median, where the constant is pinned
  std::vector<double> F0 = cdf_at_edges(mu0);
  int ref = map.first;
  for (int i = map.first; i <= map.last; ++i)
    if (F0[i] <= 0.5) ref = i;
  int r = ref - map.first;

  for (int k = 0; k < nt; ++k) {
    double t = t_grid[k];
    auto& y = vp.y[k];
    auto& vel = vp.vel[k];
    auto& dvel = vp.dvel[k];
    auto& theta = vp.theta[k];
    for (int i = 0; i < m; ++i) {
      y[i] = (1.0 - t) * map.x(i) + t * map.T[i];
      vel[i] = map.T[i] - map.x(i);
      double dTt = std::max((1.0 - t) + t * map.dT[i], 1e-12);
      dvel[i] = (map.dT[i] - 1.0) / dTt;
    }
    // theta(y) = int v dy, trapezoid along the particle positions
    theta[0] = 0.0;
    for (int i = 1; i < m; ++i)
      theta[i] =
          theta[i - 1] + 0.5 * (vel[i] + vel[i - 1]) * (y[i] - y[i - 1]);
    // Hopf-Lax value along the reference characteristic, theta_0(ref) = 0
    double want = 0.5 * t * vel[r] * vel[r];
    double shift = want - theta[r];
    for (int i = 0; i < m; ++i) theta[i] += shift;
  }

  // Hamilton-Jacobi residual, centered in time, weighted by the moving mass
  double h0 = mu0.grid.h();
  double hj = 0.0;
  for (int k = 1; k + 1 < nt; ++k) {
    double dt = vp.t[k + 1] - vp.t[k - 1];
    if (dt <= 0.0) continue;
    double acc = 0.0, w = 0.0;
    for (int i = 0; i < m; ++i) {
      double yk = vp.y[k][i];
      double th_next = interp_or_zero(vp.y[k + 1], vp.theta[k + 1], yk);
      double th_prev = interp_or_zero(vp.y[k - 1], vp.theta[k - 1], yk);
      if (yk < vp.y[k + 1].front() || yk > vp.y[k + 1].back()) continue;
      if (yk < vp.y[k - 1].front() || yk > vp.y[k - 1].back()) continue;
      double res = (th_next - th_prev) / dt +
                   0.5 * vp.vel[k][i] * vp.vel[k][i];
      double mass = mu0.v[map.first + i] * h0;
      acc += std::abs(res) * mass;
      w += mass;
    }
    if (w > 0.0) hj = std::max(hj, acc / w);
  }
  vp.hamilton_jacobi_residual = hj;

  // weak continuity residual against phi = x, x^2, x^3
  double cont = 0.0;
  for (int q = 1; q <= 3; ++q) {
    std::vector<double> mom(nt), rhs(nt);
    for (int k = 0; k < nt; ++k) {
      double mk = 0.0, rk = 0.0;
      for (int i = 0; i < m; ++i) {
        double mass = mu0.v[map.first + i] * h0;
        mk += std::pow(vp.y[k][i], q) * mass;
        rk += q * std::pow(vp.y[k][i], q - 1) * vp.vel[k][i] * mass;
      }
      mom[k] = mk;
      rhs[k] = rk;
    }
    double scale = 0.0;
    for (int k = 0; k < nt; ++k) scale = std::max(scale, std::abs(rhs[k]));
    for (int k = 1; k + 1 < nt; ++k) {
      double dt = vp.t[k + 1] - vp.t[k - 1];
      double lhs = (mom[k + 1] - mom[k - 1]) / dt;
      cont = std::max(cont, std::abs(lhs - rhs[k]) / std::max(scale, 1.0));
    }
  }
  vp.continuity_residual = cont;
  return vp;
}

}  // namespace otlab
