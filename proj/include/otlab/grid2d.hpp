#pragma once

#include <functional>
#include <vector>

#include "otlab/potential.hpp"

namespace otlab {

// square cell-centered grid on [lo,hi]^2, values row-major (x fast)
struct Grid2D {
  double lo = -4.0;
  double hi = 4.0;
  int n = 1024;

  double h() const { return (hi - lo) / n; }
  double coord(int i) const { return lo + (i + 0.5) * h(); }
  bool operator==(const Grid2D& o) const {
    return lo == o.lo && hi == o.hi && n == o.n;
  }
};

struct GridDensity2D {
  Grid2D grid;
  std::vector<double> v;

  GridDensity2D() = default;
  GridDensity2D(Grid2D g, std::vector<double> values);

  double at(int ix, int iy) const { return v[iy * grid.n + ix]; }
  double mass() const;
  double moment2() const;
  static GridDensity2D from_function(
      const Grid2D& g, const std::function<double(double, double)>& f);
};

double entropy(const GridDensity2D& mu);
double relative_entropy(const GridDensity2D& mu, const ReferenceMeasure2D& nu);
double renyi_A(const GridDensity2D& mu, int n_dim = 2);

// nu conditioned on the region; ZeroMass when the region misses the grid
GridDensity2D restrict_to(const ReferenceMeasure2D& nu, const Grid2D& g,
                          const std::function<bool(double, double)>& inside);

}  // namespace otlab
