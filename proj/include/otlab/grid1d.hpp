#pragma once

#include <functional>
#include <vector>

#include "otlab/common.hpp"

namespace otlab {

// uniform cell-centered grid on [lo, hi]; quadrature is the midpoint rule
struct Grid1D {
  double lo = -8.0;
  double hi = 8.0;
  int n = 4096;

  double h() const { return (hi - lo) / n; }
  double center(int i) const { return lo + (i + 0.5) * h(); }
  double edge(int i) const { return lo + i * h(); }
  bool operator==(const Grid1D& o) const {
    return lo == o.lo && hi == o.hi && n == o.n;
  }
};

// probability density tabulated at cell centers; mass is kept at 1
struct GridDensity1D {
  Grid1D grid;
  std::vector<double> v;

  GridDensity1D() = default;
  // validates sign, clamps the underflow floor, normalizes
  GridDensity1D(Grid1D g, std::vector<double> values);

  double mass() const;
  double moment2() const;
  double mean() const;

  // support as a cell index range [first, last]; throws ZeroMass when empty
  std::pair<int, int> support() const;

  // true when max_i |v(x_i) - v(-x_i)| <= tol * max v (requires symmetric grid)
  bool is_even(double tol = 1e-9) const;

  static GridDensity1D from_function(const Grid1D& g,
                                     const std::function<double(double)>& f);
  static GridDensity1D gaussian(const Grid1D& g, double mean, double var);
  static GridDensity1D uniform(const Grid1D& g, double a, double b);
  // standard normal conditioned on [a, b]
  static GridDensity1D truncated_gaussian(const Grid1D& g, double a, double b);
};

// grid wide enough for N(0, s^2) against the standard Gaussian: +-8.5 max(s,1)
Grid1D gaussian_grid(double s, int n = 4096);

// cumulative mass at cell edges, F[0] = 0, F[n] = 1, nondecreasing
std::vector<double> cdf_at_edges(const GridDensity1D& mu);

double quadrature(const GridDensity1D& mu,
                  const std::function<double(double)>& f);

}  // namespace otlab
