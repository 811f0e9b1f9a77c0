#pragma once

#include <vector>

#include "otlab/gaussian.hpp"
#include "otlab/grid1d.hpp"

namespace otlab {

// monotone rearrangement T = F1^{-1} o F0 tabulated on the source support;
// F1^{-1} is the left-continuous inverse
struct Quantile1DMap {
  Grid1D source_grid;
  int first = 0, last = -1;   // support cell range of the source
  std::vector<double> T;      // map at cell centers, nondecreasing
  std::vector<double> dT;     // finite-difference derivative, >= 0
  double w2 = 0.0;            // transport distance of the coupling

  double x(int k) const { return source_grid.center(first + k); }
  int size() const { return (int)T.size(); }
};

Quantile1DMap quantile_map(const GridDensity1D& mu0, const GridDensity1D& mu1);
double w2_1d(const GridDensity1D& mu0, const GridDensity1D& mu1);

// density of ((1-t) Id + t T)_# mu0 resampled on out_grid
GridDensity1D interpolate(const Quantile1DMap& map, const GridDensity1D& mu0,
                          double t, const Grid1D& out_grid);

struct GeodesicPath {
  std::vector<double> t;
  std::vector<GridDensity1D> rho;  // interpolants on a common grid
  double w2 = 0.0;
  Quantile1DMap map;
  GridDensity1D mu0;
};

std::vector<double> uniform_time_grid(int points);  // default 33 points

GeodesicPath interpolate_path(const GridDensity1D& mu0,
                              const GridDensity1D& mu1,
                              const std::vector<double>& t_grid,
                              const Grid1D& out_grid);

// velocity field along the path, tabulated at the moving particle positions
// y_i(t) = (1-t) x_i + t T(x_i); theta is its potential with the
// integration constant fixed so d theta/dt + |grad theta|^2/2 = 0 holds
// along the median trajectory
struct VelocityPotential {
  std::vector<double> t;
  std::vector<std::vector<double>> y;      // particle positions
  std::vector<std::vector<double>> vel;    // velocity = T(x) - x
  std::vector<std::vector<double>> dvel;   // d vel / dy
  std::vector<std::vector<double>> theta;  // potential values at y

  double hamilton_jacobi_residual = 0.0;   // weighted sup over interior times
  double continuity_residual = 0.0;        // weak residual vs x, x^2, x^3
};

VelocityPotential velocity_potential(const Quantile1DMap& map,
                                     const GridDensity1D& mu0,
                                     const std::vector<double>& t_grid);

}  // namespace otlab
