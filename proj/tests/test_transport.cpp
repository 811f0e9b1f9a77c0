#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "otlab/transport.hpp"

using namespace otlab;

namespace {

GridDensity1D blob_mixture(const Grid1D& g, const std::vector<double>& centers,
                           double sigma) {
  return GridDensity1D::from_function(g, [&](double x) {
    double v = 0.0;
    for (double c : centers) {
      double z = (x - c) / sigma;
      v += std::exp(-0.5 * z * z);
    }
    return v;
  });
}

}  // namespace

TEST_CASE("transport distance between centred gaussians is the scale gap") {
  for (const auto& k : oracle::kGaussFamily) {
    Grid1D g = gaussian_grid(k.s);
    GridDensity1D mu = GridDensity1D::gaussian(g, 0.0, k.s * k.s);
    GridDensity1D ga = GridDensity1D::gaussian(g, 0.0, 1.0);
    CHECK(std::abs(w2_1d(mu, ga) - k.w2) / k.w2 < 1e-4);
  }
}

TEST_CASE("transport distance between general gaussians combines mean and "
          "spread gaps") {
  Grid1D g = gaussian_grid(1.5);
  GridDensity1D a = GridDensity1D::gaussian(g, 0.3, 2.25);
  GridDensity1D b = GridDensity1D::gaussian(g, -0.2, 1.0);
  CHECK(std::abs(w2_1d(a, b) - oracle::kShiftedW2) < 1e-4);
  // the two directions discretise on different source cells
  CHECK(w2_1d(a, b) == doctest::Approx(w2_1d(b, a)).epsilon(1e-5));
}

TEST_CASE("uniform translations and dilations have closed-form cost") {
  Grid1D g = gaussian_grid(1.0);
  GridDensity1D u01 = GridDensity1D::uniform(g, 0.0, 1.0);
  GridDensity1D u23 = GridDensity1D::uniform(g, 2.0, 3.0);
  GridDensity1D u02 = GridDensity1D::uniform(g, 0.0, 2.0);
  CHECK(std::abs(w2_1d(u01, u23) - 2.0) < 1e-3);
  CHECK(std::abs(w2_1d(u01, u02) - oracle::kW2UnifGrow) < 1e-3);
}

TEST_CASE("self-transport is the identity map") {
  Grid1D g = gaussian_grid(1.0, 1024);
  GridDensity1D mu = GridDensity1D::gaussian(g, 0.0, 0.49);
  Quantile1DMap map = quantile_map(mu, mu);
  CHECK(map.w2 < 1e-8);
  // cells carrying no appreciable mass saturate the quantile inverse, so
  // the pointwise identity is only claimed on the bulk
  for (int k = 0; k < map.size(); k += 37) {
    if (mu.v[map.first + k] < 1e-9) continue;
    CHECK(std::abs(map.T[k] - map.x(k)) < 2.0 * g.h());
  }
}

TEST_CASE("quantile map is monotone and pushes the second moment forward") {
  Grid1D g = gaussian_grid(2.0);
  GridDensity1D a = GridDensity1D::truncated_gaussian(g, -1.5, 1.5);
  GridDensity1D b = GridDensity1D::gaussian(g, 0.5, 2.0);
  Quantile1DMap map = quantile_map(a, b);
  for (int k = 1; k < map.size(); ++k) CHECK(map.T[k] >= map.T[k - 1]);
  for (double d : map.dT) CHECK(d >= 0.0);
  double pushed = 0.0;
  for (int k = 0; k < map.size(); ++k) {
    pushed += a.v[map.first + k] * map.T[k] * map.T[k];
  }
  pushed *= g.h();
  CHECK(std::abs(pushed - b.moment2()) < 5e-3);
}

TEST_CASE("brute-force matching, monotone matching and the grid pipeline "
          "agree on well-separated blobs") {
  std::vector<double> x = {-2.6, -1.3, -0.4, 0.2, 1.1, 2.4};
  std::vector<double> y = {-2.0, -0.9, 0.5, 1.4, 1.9, 3.1};
  double by_enumeration = oracle::assignment_cost(x, y);
  double by_sorting = oracle::sorted_matching_cost(x, y);
  CHECK(by_enumeration == doctest::Approx(by_sorting).epsilon(1e-12));

  const double sigma = 0.02;
  Grid1D g{-8.5, 8.5, 8192};
  GridDensity1D mu = blob_mixture(g, x, sigma);
  GridDensity1D nu = blob_mixture(g, y, sigma);
  double w = w2_1d(mu, nu);
  // identical blob shapes translate onto each other, so the mixture cost
  // is exactly the atom matching cost
  CHECK(std::abs(w * w - by_enumeration) < 1e-6);
}

TEST_CASE("displacement interpolation of gaussians stays gaussian") {
  Grid1D g = gaussian_grid(2.0);
  GridDensity1D a = GridDensity1D::gaussian(g, 0.0, 1.0);
  GridDensity1D b = GridDensity1D::gaussian(g, 0.0, 4.0);
  Quantile1DMap map = quantile_map(a, b);
  CHECK(std::abs(map.w2 - 1.0) < 1e-4);
  for (double t : {0.25, 0.5, 0.75}) {
    GridDensity1D rho = interpolate(map, a, t, g);
    double st = 1.0 + t;
    CHECK(std::abs(rho.mass() - 1.0) < 1e-12);
    CHECK(std::abs(rho.moment2() - st * st) < 2e-3);
    CHECK(rho.is_even(1e-6));
  }
  GridDensity1D at0 = interpolate(map, a, 0.0, g);
  double l1 = 0.0;
  for (int i = 0; i < g.n; ++i) l1 += std::abs(at0.v[i] - a.v[i]) * g.h();
  CHECK(l1 < 1e-3);
}

TEST_CASE("geodesic paths carry one density per requested time") {
  Grid1D g = gaussian_grid(1.0, 1024);
  GridDensity1D a = GridDensity1D::uniform(g, -1.0, 1.0);
  GridDensity1D b = GridDensity1D::gaussian(g, 0.0, 1.0);
  auto tg = uniform_time_grid(9);
  REQUIRE(tg.size() == 9);
  CHECK(tg.front() == 0.0);
  CHECK(tg.back() == 1.0);
  GeodesicPath path = interpolate_path(a, b, tg, g);
  REQUIRE(path.rho.size() == tg.size());
  for (const auto& rho : path.rho) {
    CHECK(std::abs(rho.mass() - 1.0) < 1e-12);
  }
  CHECK(path.w2 == doctest::Approx(w2_1d(a, b)).epsilon(1e-12));
}

TEST_CASE("velocity potential solves the along-path equations") {
  Grid1D g = gaussian_grid(1.5);
  GridDensity1D a = GridDensity1D::gaussian(g, 0.0, 1.0);
  GridDensity1D b = GridDensity1D::gaussian(g, 0.0, 2.25);
  Quantile1DMap map = quantile_map(a, b);
  VelocityPotential vp = velocity_potential(map, a, uniform_time_grid(17));
  // the potential is rational in t, so the centered time difference leaves
  // an O(dt^2) residual; halving dt must shrink it accordingly
  VelocityPotential fine = velocity_potential(map, a, uniform_time_grid(33));
  CHECK(vp.hamilton_jacobi_residual < 5e-4);
  CHECK(fine.hamilton_jacobi_residual < 0.3 * vp.hamilton_jacobi_residual);
  CHECK(vp.continuity_residual < 1e-6);
  REQUIRE(vp.t.size() == 17);
  // monotone velocity only holds where the quantile inverse is resolved,
  // i.e. on cells that carry mass
  for (std::size_t j = 0; j < vp.vel.size(); ++j) {
    for (std::size_t k = 1; k < vp.vel[j].size(); ++k) {
      if (a.v[map.first + k] < 1e-9 || a.v[map.first + k - 1] < 1e-9)
        continue;
      CHECK(vp.vel[j][k] >= vp.vel[j][k - 1] - 1e-9);
    }
  }
}
