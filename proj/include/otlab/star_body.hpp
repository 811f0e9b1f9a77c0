#pragma once

#include <cstdint>
#include <vector>

#include "otlab/potential.hpp"

namespace otlab {

// star-shaped set about the origin given by a radial profile on a uniform
// angle grid, interpolated linearly in the angle
struct StarBody2D {
  std::vector<double> rho;  // > 0 unless allow_zero
  bool allow_zero = false;

  int m() const { return (int)rho.size(); }
  double radial(double theta) const;
  bool contains(double x, double y, double scale = 1.0) const;
  double max_radius() const;

  static StarBody2D disc(double r, int m = 256);
  // profile exp(sum_k decaying random harmonics / smoothness); larger
  // smoothness flattens toward a disc
  static StarBody2D random(std::uint64_t seed, double smoothness = 1.5,
                           int m = 256);
};

// boolean mask over the node lattice {lo + i h : 0 <= i < nn}^2
struct NodeRaster {
  double lo = -4.0;
  double h = 8.0 / 1024;
  int nn = 1025;
  std::vector<std::uint8_t> mask;

  bool at(int ix, int iy) const { return mask[(long)iy * nn + ix] != 0; }
  long count() const;
};

// nodes with |x| <= scale * rho(theta(x)); exact point membership
NodeRaster rasterize(const StarBody2D& k, double scale, double domain_half,
                     int cells);

struct MinkowskiAverage {
  double t = 0.0;
  // inner: every marked node is a true point of (1-t)K0 + tK1;
  // outer: inner dilated one node, covering the set up to one cell
  NodeRaster inner;
  NodeRaster outer;
};

// morphological sum of the scaled rasters via FFT convolution of the masks;
// the result lattice spans [-2 domain_half, 2 domain_half]
MinkowskiAverage minkowski_average(const StarBody2D& k0, const StarBody2D& k1,
                                   double t, double domain_half, int cells);

// node-lattice quadrature of the reference density over the mask
double body_measure(const ReferenceMeasure2D& nu, const NodeRaster& r);

}  // namespace otlab
