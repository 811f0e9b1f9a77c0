#include "otlab/grid2d.hpp"

#include <cmath>

namespace otlab {

GridDensity2D::GridDensity2D(Grid2D g, std::vector<double> values)
    : grid(g), v(std::move(values)) {
  if ((long)v.size() != (long)grid.n * grid.n)
    throw GridMismatchError("density length != grid cells");
  double m = 0.0;
  for (double& x : v) {
    if (!std::isfinite(x) || x < -1e-12)
      throw NegativeDensityError("density has negative or non-finite cells");
    x = clamp_density(x);
    m += x;
  }
  m *= grid.h() * grid.h();
  if (m <= 0.0) throw ZeroMassError("density has zero mass on the grid");
  for (double& x : v) x /= m;
}

double GridDensity2D::mass() const {
  double m = 0.0;
  for (double x : v) m += x;
  return m * grid.h() * grid.h();
}

double GridDensity2D::moment2() const {
  double m = 0.0;
  for (int iy = 0; iy < grid.n; ++iy) {
    double y = grid.coord(iy);
    for (int ix = 0; ix < grid.n; ++ix) {
      double x = grid.coord(ix);
      m += (x * x + y * y) * at(ix, iy);
    }
  }
  return m * grid.h() * grid.h();
}

GridDensity2D GridDensity2D::from_function(
    const Grid2D& g, const std::function<double(double, double)>& f) {
  std::vector<double> vals((long)g.n * g.n);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      vals[(long)iy * g.n + ix] = f(g.coord(ix), g.coord(iy));
  return GridDensity2D(g, std::move(vals));
}

double entropy(const GridDensity2D& mu) {
  double s = 0.0;
  for (double x : mu.v) s -= xlogx(x);
  return s * mu.grid.h() * mu.grid.h();
}

double relative_entropy(const GridDensity2D& mu,
                        const ReferenceMeasure2D& nu) {
  double h = mu.grid.h(), s = 0.0;
  for (int iy = 0; iy < mu.grid.n; ++iy) {
    double y = mu.grid.coord(iy);
    for (int ix = 0; ix < mu.grid.n; ++ix) {
      double m = mu.at(ix, iy);
      if (m <= 0.0) continue;
      double ln = nu.log_density(Vec2(mu.grid.coord(ix), y));
      if (ln < std::log(kDensityFloor)) return kInf;  // support violation
      s += m * (std::log(m) - ln);
    }
  }
  return s * h * h;
}

double renyi_A(const GridDensity2D& mu, int n_dim) {
  double e = 1.0 - 1.0 / n_dim, s = 0.0;
  for (double x : mu.v)
    if (x > 0.0) s += std::pow(x, e);
  return s * mu.grid.h() * mu.grid.h();
}

GridDensity2D restrict_to(const ReferenceMeasure2D& nu, const Grid2D& g,
                          const std::function<bool(double, double)>& inside) {
  std::vector<double> vals((long)g.n * g.n, 0.0);
  for (int iy = 0; iy < g.n; ++iy) {
    double y = g.coord(iy);
    for (int ix = 0; ix < g.n; ++ix) {
      double x = g.coord(ix);
      if (inside(x, y)) vals[(long)iy * g.n + ix] = nu.density(Vec2(x, y));
    }
  }
  return GridDensity2D(g, std::move(vals));
}

}  // namespace otlab
