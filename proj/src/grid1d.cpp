#include "otlab/grid1d.hpp"

#include <algorithm>
#include <cmath>

namespace otlab {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  unsigned threads) {
  if (threads == 0) threads = default_threads();
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] {
      for (std::size_t i = b; i < e; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

GridDensity1D::GridDensity1D(Grid1D g, std::vector<double> values)
    : grid(g), v(std::move(values)) {
  if ((int)v.size() != grid.n)
    throw GridMismatchError("density length != grid cells");
  double m = 0.0;
  for (double& x : v) {
    if (!std::isfinite(x) || x < -1e-12)
      throw NegativeDensityError("density has negative or non-finite cells");
    x = clamp_density(x);
    m += x;
  }
  m *= grid.h();
  if (m <= 0.0) throw ZeroMassError("density has zero mass on the grid");
  for (double& x : v) x /= m;
}

double GridDensity1D::mass() const {
  double m = 0.0;
  for (double x : v) m += x;
  return m * grid.h();
}

double GridDensity1D::moment2() const {
  double m = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    double x = grid.center(i);
    m += x * x * v[i];
  }
  return m * grid.h();
}

double GridDensity1D::mean() const {
  double m = 0.0;
  for (int i = 0; i < grid.n; ++i) m += grid.center(i) * v[i];
  return m * grid.h();
}

std::pair<int, int> GridDensity1D::support() const {
  int a = 0, b = grid.n - 1;
  while (a < grid.n && v[a] == 0.0) ++a;
  while (b >= 0 && v[b] == 0.0) --b;
  if (a > b) throw ZeroMassError("empty support");
  return {a, b};
}

bool GridDensity1D::is_even(double tol) const {
  if (std::abs(grid.lo + grid.hi) > 1e-12 * (grid.hi - grid.lo)) return false;
  double vmax = *std::max_element(v.begin(), v.end());
  for (int i = 0; i < grid.n; ++i)
    if (std::abs(v[i] - v[grid.n - 1 - i]) > tol * vmax) return false;
  return true;
}

GridDensity1D GridDensity1D::from_function(
    const Grid1D& g, const std::function<double(double)>& f) {
  std::vector<double> vals(g.n);
  for (int i = 0; i < g.n; ++i) vals[i] = f(g.center(i));
  return GridDensity1D(g, std::move(vals));
}

GridDensity1D GridDensity1D::gaussian(const Grid1D& g, double mean,
                                      double var) {
  if (var <= 0.0) throw UnsupportedError("gaussian needs var > 0");
  double inv2v = 0.5 / var;
  return from_function(
      g, [&](double x) { return std::exp(-(x - mean) * (x - mean) * inv2v); });
}

GridDensity1D GridDensity1D::uniform(const Grid1D& g, double a, double b) {
  if (!(a < b)) throw UnsupportedError("uniform needs a < b");
  return from_function(g, [&](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; });
}

GridDensity1D GridDensity1D::truncated_gaussian(const Grid1D& g, double a,
                                                double b) {
  if (!(a < b)) throw UnsupportedError("truncation needs a < b");
  return from_function(g, [&](double x) {
    return (x >= a && x <= b) ? std::exp(-0.5 * x * x) : 0.0;
  });
}

Grid1D gaussian_grid(double s, int n) {
  double r = 8.5 * std::max(1.0, std::abs(s));
  return Grid1D{-r, r, n};
}

std::vector<double> cdf_at_edges(const GridDensity1D& mu) {
  std::vector<double> F(mu.grid.n + 1);
  F[0] = 0.0;
  double h = mu.grid.h();
  for (int i = 0; i < mu.grid.n; ++i) F[i + 1] = F[i] + mu.v[i] * h;
  // cumulative rounding can leave F[n] a few ulp off 1
  double total = F[mu.grid.n];
  for (double& f : F) f /= total;
  return F;
}

double quadrature(const GridDensity1D& mu,
                  const std::function<double(double)>& f) {
  double s = 0.0;
  for (int i = 0; i < mu.grid.n; ++i)
    if (mu.v[i] > 0.0) s += f(mu.grid.center(i)) * mu.v[i];
  return s * mu.grid.h();
}

}  // namespace otlab
