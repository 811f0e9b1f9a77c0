#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "otlab/grid1d.hpp"

using namespace otlab;

TEST_CASE("gaussian density: mass, mean and variance match the parameters") {
  for (double s : {0.5, 1.0, 2.0}) {
    Grid1D gs = gaussian_grid(s, 2048);
    GridDensity1D mu = GridDensity1D::gaussian(gs, 0.0, s * s);
    CHECK(std::abs(mu.mass() - 1.0) < 1e-12);
    CHECK(std::abs(mu.mean()) < 1e-10);
    CHECK(std::abs(mu.moment2() - s * s) < 1e-8);
  }
  Grid1D g = gaussian_grid(1.0, 2048);
  GridDensity1D shifted = GridDensity1D::gaussian(g, 0.7, 1.0);
  CHECK(std::abs(shifted.mean() - 0.7) < 1e-8);
  CHECK(std::abs(shifted.moment2() - (1.0 + 0.49)) < 1e-7);
}

TEST_CASE("gaussian_grid widens with the scale") {
  Grid1D a = gaussian_grid(1.0);
  Grid1D b = gaussian_grid(3.0);
  CHECK(a.hi == 8.5);
  CHECK(b.hi == 3.0 * 8.5);
  CHECK(a.n == 4096);
  CHECK(-a.lo == a.hi);
}

TEST_CASE("truncated gaussian carries the conditioned mass profile") {
  Grid1D g = gaussian_grid(1.0);
  GridDensity1D mu = GridDensity1D::truncated_gaussian(g, -1.0, 1.0);
  CHECK(std::abs(mu.mass() - 1.0) < 1e-12);
  CHECK(mu.is_even());
  auto [first, last] = mu.support();
  CHECK(g.center(first) >= -1.0 - g.h());
  CHECK(g.center(last) <= 1.0 + g.h());
  // second moment of Z | |Z|<=1: 1 - 2 phi(1)/(2 Phi(1)-1)
  double m2 = 1.0 - 2.0 * std::exp(-0.5) / std::sqrt(2.0 * M_PI) /
                        oracle::kTruncMass1;
  CHECK(std::abs(mu.moment2() - m2) < 5e-4);
}

TEST_CASE("uniform density is flat with the right moments") {
  Grid1D g = gaussian_grid(1.0);
  GridDensity1D mu = GridDensity1D::uniform(g, 0.0, 1.0);
  CHECK(std::abs(mu.mass() - 1.0) < 1e-12);
  CHECK(std::abs(mu.mean() - 0.5) < 2.0 * g.h());
  CHECK_FALSE(mu.is_even());
}

TEST_CASE("cdf at edges is a monotone bijection onto [0,1]") {
  Grid1D g = gaussian_grid(1.0, 1024);
  GridDensity1D mu = GridDensity1D::gaussian(g, 0.0, 1.0);
  auto F = cdf_at_edges(mu);
  REQUIRE((int)F.size() == g.n + 1);
  CHECK(F.front() == 0.0);
  CHECK(F.back() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < F.size(); ++i) CHECK(F[i] >= F[i - 1]);
  // compare against Phi at a few interior edges
  for (int i : {256, 512, 768}) {
    CHECK(std::abs(F[i] - oracle::normal_cdf(g.edge(i))) < 1e-4);
  }
}

TEST_CASE("quadrature agrees with the moment accessors") {
  Grid1D g = gaussian_grid(1.0, 1024);
  GridDensity1D mu = GridDensity1D::gaussian(g, 0.3, 0.8);
  double m2 = quadrature(mu, [](double x) { return x * x; });
  CHECK(m2 == doctest::Approx(mu.moment2()).epsilon(1e-13));
  CHECK(quadrature(mu, [](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("density constructor rejects negative values and zero mass") {
  Grid1D g{-1.0, 1.0, 16};
  std::vector<double> neg(16, 1.0);
  neg[3] = -0.5;
  CHECK_THROWS_AS(GridDensity1D(g, neg), NegativeDensityError);
  std::vector<double> zero(16, 0.0);
  CHECK_THROWS_AS(GridDensity1D(g, zero), ZeroMassError);
}

TEST_CASE("evenness detection needs a symmetric profile") {
  Grid1D g = gaussian_grid(1.0, 512);
  CHECK(GridDensity1D::gaussian(g, 0.0, 1.0).is_even());
  CHECK_FALSE(GridDensity1D::gaussian(g, 0.25, 1.0).is_even());
}
