#include "otlab/potential.hpp"

#include <cmath>
#include <numbers>

namespace otlab {

double ConvexBodySupport::value(const Vec2& x) const {
  double h = -kInf;
  for (const Vec2& v : vertices) h = std::max(h, x.dot(v));
  return h;
}

double ConvexBodySupport::smooth_value(const Vec2& x) const {
  // factor out the max to keep the q-powers in range
  double m = 0.0;
  for (const Vec2& v : vertices) m = std::max(m, x.dot(v));
  if (m <= 0.0) return 0.0;
  double s = 0.0;
  for (const Vec2& v : vertices) {
    double d = x.dot(v);
    if (d > 0.0) s += std::pow(d / m, smooth_q);
  }
  return m * std::pow(s, 1.0 / smooth_q);
}

Vec2 ConvexBodySupport::smooth_grad(const Vec2& x) const {
  double h = smooth_value(x);
  if (h <= 0.0) return Vec2::Zero();
  Vec2 g = Vec2::Zero();
  for (const Vec2& v : vertices) {
    double d = x.dot(v);
    if (d > 0.0) g += std::pow(d / h, smooth_q - 1.0) * v;
  }
  return g;
}

Mat2 ConvexBodySupport::smooth_hess(const Vec2& x) const {
  double h = smooth_value(x);
  if (h <= 0.0) return Mat2::Zero();
  Vec2 g = smooth_grad(x);
  Mat2 m = Mat2::Zero();
  for (const Vec2& v : vertices) {
    double d = x.dot(v);
    if (d > 0.0) m += std::pow(d / h, smooth_q - 2.0) * (v * v.transpose());
  }
  // d2/dx2 of (sum d_j^q)^{1/q}
  return (smooth_q - 1.0) / h * (m - g * g.transpose());
}

ConvexBodySupport ConvexBodySupport::from_support_values(
    const std::vector<double>& h) {
  int m = (int)h.size();
  if (m < 3) throw UnsupportedError("need >= 3 support directions");
  ConvexBodySupport b;
  b.vertices.reserve(m);
  for (int j = 0; j < m; ++j) {
    double t0 = 2.0 * std::numbers::pi * j / m;
    double t1 = 2.0 * std::numbers::pi * (j + 1) / m;
    Vec2 u0(std::cos(t0), std::sin(t0)), u1(std::cos(t1), std::sin(t1));
    Mat2 a;
    a << u0.x(), u0.y(), u1.x(), u1.y();
    Vec2 rhs(h[j], h[(j + 1) % m]);
    b.vertices.push_back(a.colPivHouseholderQr().solve(rhs));
  }
  return b;
}

ConvexBodySupport ConvexBodySupport::regular_polygon(int k, double radius) {
  ConvexBodySupport b;
  for (int j = 0; j < k; ++j) {
    double t = 2.0 * std::numbers::pi * j / k;
    b.vertices.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  return b;
}

double HomogeneousPotential2D::operator()(const Vec2& x) const {
  double h = euclidean ? scale * x.norm() : body.smooth_value(x);
  return std::pow(h, p);
}

Vec2 HomogeneousPotential2D::grad(const Vec2& x) const {
  if (euclidean) {
    double r = x.norm();
    if (r == 0.0) return Vec2::Zero();
    return p * std::pow(scale, p) * std::pow(r, p - 2.0) * x;
  }
  double h = body.smooth_value(x);
  if (h <= 0.0) return Vec2::Zero();
  return p * std::pow(h, p - 1.0) * body.smooth_grad(x);
}

Mat2 HomogeneousPotential2D::hess(const Vec2& x) const {
  if (euclidean) {
    double r = x.norm();
    if (r == 0.0) return Mat2::Zero();
    double cp = std::pow(scale, p);
    Mat2 proj = x * x.transpose() / (r * r);
    return cp * p * std::pow(r, p - 2.0) *
           (Mat2::Identity() + (p - 2.0) * proj);
  }
  double h = body.smooth_value(x);
  if (h <= 0.0) return Mat2::Zero();
  Vec2 g = body.smooth_grad(x);
  return p * (p - 1.0) * std::pow(h, p - 2.0) * (g * g.transpose()) +
         p * std::pow(h, p - 1.0) * body.smooth_hess(x);
}

HomogeneousPotential2D HomogeneousPotential2D::radial(double p) {
  HomogeneousPotential2D v;
  v.p = p;
  v.euclidean = true;
  v.scale = std::pow(p, -1.0 / p);
  return v;
}

HomogeneousPotential2D HomogeneousPotential2D::polytope(double p,
                                                        ConvexBodySupport b) {
  HomogeneousPotential2D v;
  v.p = p;
  v.euclidean = false;
  v.body = std::move(b);
  return v;
}

double HomogeneousPotential1D::operator()(double x) const {
  double h = x >= 0.0 ? slope_pos * x : -slope_neg * x;
  return std::pow(h, p);
}

double HomogeneousPotential1D::d1(double x) const {
  double s = x >= 0.0 ? slope_pos : slope_neg;
  double h = s * std::abs(x);
  double sign = x >= 0.0 ? 1.0 : -1.0;
  return sign * p * s * std::pow(h, p - 1.0);
}

double HomogeneousPotential1D::d2(double x) const {
  double s = x >= 0.0 ? slope_pos : slope_neg;
  double h = s * std::abs(x);
  return p * (p - 1.0) * s * s * std::pow(h, p - 2.0);
}

HomogeneousPotential1D HomogeneousPotential1D::gaussian() {
  return {2.0, std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
}

HomogeneousPotential1D HomogeneousPotential1D::radial(double p) {
  double s = std::pow(p, -1.0 / p);
  return {p, s, s};
}

ReferenceMeasure1D::ReferenceMeasure1D(HomogeneousPotential1D v, Grid1D g)
    : pot(v), grid(g) {
  double m = 0.0;
  for (int i = 0; i < grid.n; ++i) m += std::exp(-pot(grid.center(i)));
  m *= grid.h();
  if (m <= 0.0) throw ZeroMassError("reference potential too steep for grid");
  c = -std::log(m);
}

GridDensity1D ReferenceMeasure1D::as_grid_density() const {
  return GridDensity1D::from_function(grid,
                                      [&](double x) { return density(x); });
}

ReferenceMeasure1D ReferenceMeasure1D::standard_gaussian(Grid1D g) {
  return ReferenceMeasure1D(HomogeneousPotential1D::gaussian(), g);
}

ReferenceMeasure2D::ReferenceMeasure2D(HomogeneousPotential2D v, double lo_,
                                       double hi_, int n_)
    : pot(std::move(v)), lo(lo_), hi(hi_), n(n_) {
  double h = (hi - lo) / n, m = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = lo + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      double y = lo + (j + 0.5) * h;
      m += std::exp(-pot(Vec2(x, y)));
    }
  }
  m *= h * h;
  if (m <= 0.0) throw ZeroMassError("reference potential too steep for grid");
  c = -std::log(m);
}

ReferenceMeasure2D ReferenceMeasure2D::standard_gaussian(double lo, double hi,
                                                         int n) {
  return ReferenceMeasure2D(HomogeneousPotential2D::radial(2.0), lo, hi, n);
}

}  // namespace otlab
