#pragma once

#include <Eigen/Dense>
#include <vector>

#include "otlab/grid1d.hpp"

namespace otlab {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// support function of a planar convex body, h(x) = max_j <x, v_j> over the
// vertex list; built either from vertices or from support values on a
// uniform direction grid (adjacent support lines intersected)
struct ConvexBodySupport {
  std::vector<Vec2> vertices;
  // smooth surrogate (sum_j <x,v_j>_+^q)^(1/q); convex, 1-homogeneous,
  // used wherever second derivatives are required
  double smooth_q = 12.0;

  double value(const Vec2& x) const;
  double smooth_value(const Vec2& x) const;
  Vec2 smooth_grad(const Vec2& x) const;
  Mat2 smooth_hess(const Vec2& x) const;

  static ConvexBodySupport from_support_values(
      const std::vector<double>& h_on_directions);
  static ConvexBodySupport regular_polygon(int k, double radius);
};

// V(x) = h(x)^p with h a 1-homogeneous nonnegative convex gauge, p > 1.
// Euclidean mode h(x) = scale |x| keeps gradient and Hessian in closed form.
struct HomogeneousPotential2D {
  double p = 2.0;
  bool euclidean = true;
  double scale = 1.0;
  ConvexBodySupport body;  // used when !euclidean

  double operator()(const Vec2& x) const;
  Vec2 grad(const Vec2& x) const;
  Mat2 hess(const Vec2& x) const;

  // V(x) = |x|^p / p; the standard Gaussian potential at p = 2
  static HomogeneousPotential2D radial(double p);
  static HomogeneousPotential2D polytope(double p, ConvexBodySupport b);
};

// 1-D gauge h(x) = a x for x >= 0, -b x for x < 0 (a, b > 0), V = h^p
struct HomogeneousPotential1D {
  double p = 2.0;
  double slope_pos = 1.0;
  double slope_neg = 1.0;

  double operator()(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  static HomogeneousPotential1D gaussian();  // x^2/2
  static HomogeneousPotential1D radial(double p);  // |x|^p / p
};

// dnu = e^{-V + c} dx normalized on the working grid
struct ReferenceMeasure1D {
  HomogeneousPotential1D pot;
  Grid1D grid;
  double c = 0.0;  // log-normalizer, fixed by quadrature at construction

  ReferenceMeasure1D(HomogeneousPotential1D v, Grid1D g);
  double log_density(double x) const { return -pot(x) + c; }
  double density(double x) const { return std::exp(log_density(x)); }
  GridDensity1D as_grid_density() const;
  static ReferenceMeasure1D standard_gaussian(Grid1D g);
};

struct ReferenceMeasure2D {
  HomogeneousPotential2D pot;
  double lo = -4.0, hi = 4.0;
  int n = 1024;  // cells per side for the normalizing quadrature
  double c = 0.0;

  ReferenceMeasure2D(HomogeneousPotential2D v, double lo_, double hi_, int n_);
  double log_density(const Vec2& x) const { return -pot(x) + c; }
  double density(const Vec2& x) const { return std::exp(log_density(x)); }
  static ReferenceMeasure2D standard_gaussian(double lo, double hi, int n);
};

}  // namespace otlab
