#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "otlab/report.hpp"

using namespace otlab;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

VerificationResult sample_result(bool matched) {
  VerificationResult r;
  r.suite = "sample";
  r.claim = "two plus two stays four";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  CaseResult a;
  a.id = "first";
  a.margin = 0.25;
  a.values = {{"lhs", 4.0}, {"rhs", 4.25}};
  CaseResult b;
  b.id = "second";
  b.margin = matched ? 0.1 : -1.0;
  if (!matched) b.caveat = "forced for the test";
  r.cases = {a, b};
  r.params = {{"cells", 64.0}};
  r.finish();
  return r;
}

}  // namespace

TEST_CASE("density csv round-trips up to renormalisation") {
  Grid1D g = gaussian_grid(1.0, 256);
  GridDensity1D mu = GridDensity1D::gaussian(g, 0.3, 0.7);
  auto path = temp_file("otlab_density_roundtrip.csv");
  write_density_csv(path.string(), mu);
  GridDensity1D back = read_density_csv(path.string());
  REQUIRE(back.grid == mu.grid);
  // the constructor re-normalises, which may move the last bit
  for (int i = 0; i < g.n; ++i)
    CHECK(back.v[i] == doctest::Approx(mu.v[i]).epsilon(1e-14));
  std::filesystem::remove(path);
}

TEST_CASE("density csv rejects malformed headers") {
  auto path = temp_file("otlab_density_bad.csv");
  std::ofstream(path) << "not,a,header\n1.0\n";
  CHECK_THROWS_AS(read_density_csv(path.string()), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("json report carries verdicts and clamps non-finite margins") {
  auto ok = sample_result(true);
  auto bad = sample_result(false);
  bad.suite = "broken";
  bad.cases[1].margin = -kInf;
  bad.finish();
  std::string text = render_json({ok, bad});
  auto j = nlohmann::json::parse(text);
  REQUIRE(j["suites"].size() == 2);
  CHECK(j["mismatched"] == 1);
  CHECK(j["suites"][0]["suite"] == "sample");
  CHECK(j["suites"][0]["holds"] == true);
  CHECK(j["suites"][0]["matches_expectation"] == true);
  CHECK(j["suites"][1]["holds"] == false);
  double clamped = j["suites"][1]["cases"][1]["margin"].get<double>();
  CHECK(clamped <= -1e307);
  CHECK(std::isfinite(clamped));
  CHECK(j["suites"][1]["cases"][1]["caveat"] == "forced for the test");
}

TEST_CASE("markdown report names every suite and failing case") {
  auto ok = sample_result(true);
  auto bad = sample_result(false);
  bad.suite = "broken";
  bad.finish();
  std::string text = render_markdown({ok, bad});
  CHECK(text.find("sample") != std::string::npos);
  CHECK(text.find("broken") != std::string::npos);
  CHECK(text.find("second") != std::string::npos);  // the failing case
  CHECK(text.find("forced for the test") != std::string::npos);
}

TEST_CASE("reports are deterministic and clock-free") {
  auto r = sample_result(true);
  CHECK(render_json({r}) == render_json({r}));
  CHECK(render_markdown({r}) == render_markdown({r}));
  RunMetadata meta{"otlab verify", "2024-01-01T00:00:00Z", 1.5, 717, 1};
  std::string m = render_metadata(meta);
  CHECK(m.find("717") != std::string::npos);
  CHECK(m.find("2024-01-01T00:00:00Z") != std::string::npos);
}

TEST_CASE("exit code reflects expectation mismatches only") {
  auto ok = sample_result(true);
  auto violated = sample_result(false);
  violated.expect_hold = false;  // a counterexample suite doing its job
  violated.finish();
  CHECK(verdict_exit_code({ok, violated}) == 0);
  auto surprise = sample_result(false);
  surprise.finish();
  CHECK(verdict_exit_code({ok, surprise}) == 3);
}

TEST_CASE("pgm masks have the portable graymap shape") {
  NodeRaster r;
  r.lo = -1.0;
  r.h = 2.0 / 4;
  r.nn = 5;
  r.mask.assign(25, 0);
  r.mask[12] = 1;
  auto path = temp_file("otlab_mask.pgm");
  write_pgm(path.string(), r);
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  int w = 0, hgt = 0, maxv = 0;
  in >> magic >> w >> hgt >> maxv;
  CHECK(magic == "P5");
  CHECK(w == 5);
  CHECK(hgt == 5);
  in.get();
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  CHECK(bytes.size() == 25);
  std::filesystem::remove(path);
}

TEST_CASE("geodesic csv has one column per time and one row per cell") {
  Grid1D g = gaussian_grid(1.0, 128);
  GridDensity1D a = GridDensity1D::gaussian(g, 0.0, 0.5);
  GridDensity1D b = GridDensity1D::gaussian(g, 0.0, 1.5);
  GeodesicPath path = interpolate_path(a, b, uniform_time_grid(5), g);
  auto file = temp_file("otlab_geodesic.csv");
  write_geodesic_csv(file.string(), path);
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("t=0") != std::string::npos);
  CHECK(header.find("t=1") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == g.n);
  std::filesystem::remove(file);
}

TEST_CASE("two dimensional density json exposes bounds and resolution") {
  Grid2D g{-1.0, 1.0, 8};
  GridDensity2D mu = GridDensity2D::from_function(
      g, [](double x, double y) { return std::exp(-x * x - y * y); });
  auto path = temp_file("otlab_density2d.json");
  write_density2d_json(path.string(), mu);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  CHECK(j["bounds"][0] == -1.0);
  CHECK(j["bounds"][1] == 1.0);
  CHECK(j["resolution"] == 8);
  CHECK(j["values"].size() == 64);
  std::filesystem::remove(path);
}
