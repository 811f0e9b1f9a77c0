#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "otlab/star_body.hpp"

using namespace otlab;

TEST_CASE("disc bodies report exact radial data") {
  StarBody2D k = StarBody2D::disc(0.9);
  CHECK(k.max_radius() == 0.9);
  CHECK(k.radial(1.234) == doctest::Approx(0.9));
  CHECK(k.contains(0.5, 0.5));
  CHECK_FALSE(k.contains(0.7, 0.7));
  CHECK(k.contains(1.2, 1.2, 2.0));
  CHECK_THROWS_AS(StarBody2D::disc(-1.0), UnsupportedError);
}

TEST_CASE("random bodies stay inside the designed radial band") {
  // rbar in [1.16, 1.30] times exp(+-0.15 sqrt(2)/1.5)
  const double lo = 1.16 * std::exp(-0.15 * std::sqrt(2.0) / 1.5);
  const double hi = 1.30 * std::exp(0.15 * std::sqrt(2.0) / 1.5);
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    StarBody2D k = StarBody2D::random(seed);
    CHECK(k.max_radius() <= hi);
    for (double r : k.rho) CHECK(r >= lo);
  }
}

TEST_CASE("rasterized disc area converges to pi r^2") {
  StarBody2D k = StarBody2D::disc(0.9);
  NodeRaster r = rasterize(k, 1.0, 1.55, 1024);
  double area = double(r.count()) * r.h * r.h;
  CHECK(std::abs(area - M_PI * 0.81) < 2.0 * M_PI * 0.9 * 2.0 * r.h);
  CHECK_THROWS_AS(rasterize(k, 1.0, 1.55, 1023), UnsupportedError);
}

TEST_CASE("gaussian measure of rasterized discs matches the closed form") {
  ReferenceMeasure2D nu = ReferenceMeasure2D::standard_gaussian(-4.0, 4.0, 512);
  for (double rad : {0.65, 0.9, 1.3}) {
    NodeRaster r = rasterize(StarBody2D::disc(rad), 1.0, 1.55, 1024);
    CHECK(std::abs(body_measure(nu, r) - oracle::gauss_disc_mass(rad)) < 2e-3);
  }
}

TEST_CASE("the minkowski average of discs is the radius average") {
  ReferenceMeasure2D nu = ReferenceMeasure2D::standard_gaussian(-4.0, 4.0, 512);
  StarBody2D k0 = StarBody2D::disc(0.65);
  StarBody2D k1 = StarBody2D::disc(1.3);
  for (double t : {0.2, 0.5, 0.8}) {
    MinkowskiAverage av = minkowski_average(k0, k1, t, 1.55, 1024);
    double exact = oracle::gauss_disc_mass((1.0 - t) * 0.65 + t * 1.3);
    double zi = body_measure(nu, av.inner);
    double zo = body_measure(nu, av.outer);
    CHECK(zi <= zo);
    // the truth sits between the rasters up to node-quadrature skin
    CHECK(zi - 1e-3 <= exact);
    CHECK(exact <= zo + 1e-3);
    CHECK(zo - zi < 4e-3);
  }
}

TEST_CASE("averaging a body with itself changes nothing") {
  ReferenceMeasure2D nu(HomogeneousPotential2D::radial(1.5), -4.0, 4.0, 512);
  const double a = 0.5 / 1.5;  // (p-1)/(p n), n = 2
  StarBody2D k = StarBody2D::disc(0.9);
  double z = std::pow(body_measure(nu, rasterize(k, 1.0, 1.05, 1024)), a);
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    MinkowskiAverage av = minkowski_average(k, k, t, 1.05, 1024);
    double zi = std::pow(body_measure(nu, av.inner), a);
    double zo = std::pow(body_measure(nu, av.outer), a);
    CHECK(std::abs(zi - z) < 1e-3);
    CHECK(std::abs(zo - z) < 1e-3);
  }
}

TEST_CASE("endpoint averages reduce to the plain raster") {
  StarBody2D k0 = StarBody2D::disc(0.7);
  StarBody2D k1 = StarBody2D::disc(1.1);
  MinkowskiAverage at0 = minkowski_average(k0, k1, 0.0, 1.55, 512);
  MinkowskiAverage at1 = minkowski_average(k0, k1, 1.0, 1.55, 512);
  CHECK(at0.inner.count() == at0.outer.count());
  CHECK(at0.inner.count() == rasterize(k0, 1.0, 1.55, 512).count());
  CHECK(at1.inner.count() == rasterize(k1, 1.0, 1.55, 512).count());
}

TEST_CASE("scaled-disc brunn-minkowski instance holds with margins") {
  // K1 = 2 K0 under the gaussian reference
  ReferenceMeasure2D nu = ReferenceMeasure2D::standard_gaussian(-4.0, 4.0, 512);
  const double a = 0.25;
  StarBody2D k0 = StarBody2D::disc(0.65);
  StarBody2D k1 = StarBody2D::disc(1.3);
  double z0 = std::pow(body_measure(nu, rasterize(k0, 1.0, 1.55, 1024)), a);
  double z1 = std::pow(body_measure(nu, rasterize(k1, 1.0, 1.55, 1024)), a);
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    MinkowskiAverage av = minkowski_average(k0, k1, t, 1.55, 1024);
    double zo = std::pow(body_measure(nu, av.outer), a);
    double zi = std::pow(body_measure(nu, av.inner), a);
    double mix = (1.0 - t) * z0 + t * z1;
    CHECK(zo - mix >= -1e-3);
    CHECK(zi - mix >= -1e-3 - (zo - zi));
  }
}
