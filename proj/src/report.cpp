#include "otlab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace otlab {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON cannot carry infinities; reports clamp them to signed sentinels
double finite(double x) {
  if (std::isinf(x)) return x > 0 ? 1e308 : -1e308;
  if (std::isnan(x)) return -1e308;
  return x;
}

ordered_json case_to_json(const CaseResult& c) {
  ordered_json j;
  j["id"] = c.id;
  j["margin"] = finite(c.margin);
  ordered_json vals;
  for (const auto& [k, v] : c.values) vals[k] = finite(v);
  j["values"] = std::move(vals);
  if (!c.caveat.empty()) j["caveat"] = c.caveat;
  return j;
}

ordered_json result_to_json(const VerificationResult& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["claim"] = r.claim;
  j["expect_hold"] = r.expect_hold;
  j["tolerance"] = r.tolerance;
  j["holds"] = r.holds;
  j["matches_expectation"] = r.matches_expectation;
  j["min_margin"] = finite(r.min_margin);
  j["worst_case"] = r.worst_case;
  ordered_json params;
  for (const auto& [k, v] : r.params) params[k] = finite(v);
  j["params"] = std::move(params);
  ordered_json cases = ordered_json::array();
  for (const auto& c : r.cases) cases.push_back(case_to_json(c));
  j["cases"] = std::move(cases);
  return j;
}

}  // namespace

std::string render_json(const std::vector<VerificationResult>& results) {
  ordered_json j;
  ordered_json suites = ordered_json::array();
  for (const auto& r : results) suites.push_back(result_to_json(r));
  j["suites"] = std::move(suites);
  int mismatched = 0;
  for (const auto& r : results)
    if (!r.matches_expectation) ++mismatched;
  j["mismatched"] = mismatched;
  return j.dump(2) + "\n";
}

std::string render_markdown(const std::vector<VerificationResult>& results) {
  std::ostringstream out;
  out << "# Verification report\n\n";
  out << "| suite | cases | expected | verdict | min margin | worst case |\n";
  out << "|---|---|---|---|---|---|\n";
  auto word = [](bool hold) { return hold ? "holds" : "violated"; };
  for (const auto& r : results) {
    out << "| " << r.suite << " | " << r.cases.size() << " | "
        << word(r.expect_hold) << " | " << word(r.holds)
        << (r.matches_expectation ? "" : " (MISMATCH)") << " | ";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", r.min_margin);
    out << buf << " | " << r.worst_case << " |\n";
  }
  out << "\n";
  for (const auto& r : results) {
    out << "## " << r.suite << "\n\n" << r.claim << "\n\n";
    out << "tolerance " << r.tolerance << ", "
        << (r.matches_expectation ? "verdict as expected"
                                  : "VERDICT MISMATCH")
        << "\n\n";
    int shown = 0;
    for (const auto& c : r.cases) {
      if (c.margin > r.tolerance && c.caveat.empty() && shown >= 5) continue;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3e", c.margin);
      out << "- `" << c.id << "` margin " << buf;
      if (!c.caveat.empty()) out << " (" << c.caveat << ")";
      out << "\n";
      ++shown;
    }
    out << "\n";
  }
  return out.str();
}

std::string render_metadata(const RunMetadata& meta) {
  ordered_json j;
  j["tool"] = meta.tool;
  j["started_at"] = meta.started_at;
  j["seconds"] = meta.seconds;
  j["seed"] = meta.seed;
  j["threads"] = meta.threads;
  return j.dump(2) + "\n";
}

int verdict_exit_code(const std::vector<VerificationResult>& results) {
  for (const auto& r : results)
    if (!r.matches_expectation) return 3;
  return 0;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  f << content;
  if (!f.good()) throw ConfigError("short write: " + path);
}

void write_density_csv(const std::string& path, const GridDensity1D& mu) {
  std::ostringstream out;
  out.precision(17);
  out << mu.grid.lo << "," << mu.grid.hi << "," << mu.grid.n << "\n";
  for (double x : mu.v) out << x << "\n";
  write_text_file(path, out.str());
}

GridDensity1D read_density_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open: " + path);
  std::string header;
  if (!std::getline(f, header)) throw ConfigError("empty density file: " + path);
  Grid1D g;
  char c1 = 0, c2 = 0;
  std::istringstream hs(header);
  if (!(hs >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ',' || c2 != ',' ||
      g.n <= 0 || !(g.lo < g.hi))
    throw ConfigError("bad density header (want lo,hi,n): " + path);
  std::vector<double> v;
  v.reserve(g.n);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    v.push_back(std::stod(line));
  }
  if ((int)v.size() != g.n)
    throw ConfigError("density row count does not match header: " + path);
  return GridDensity1D(g, std::move(v));
}

void write_density2d_json(const std::string& path, const GridDensity2D& mu) {
  ordered_json j;
  j["bounds"] = {mu.grid.lo, mu.grid.hi};
  j["resolution"] = mu.grid.n;
  j["values"] = mu.v;
  write_text_file(path, j.dump() + "\n");
}

void write_pgm(const std::string& path, const NodeRaster& raster) {
  std::ostringstream out;
  out << "P5\n" << raster.nn << " " << raster.nn << "\n255\n";
  std::string bytes;
  bytes.reserve((std::size_t)raster.nn * raster.nn);
  for (int iy = raster.nn - 1; iy >= 0; --iy)
    for (int ix = 0; ix < raster.nn; ++ix)
      bytes.push_back(raster.at(ix, iy) ? (char)255 : (char)0);
  write_text_file(path, out.str() + bytes);
}

void write_geodesic_csv(const std::string& path, const GeodesicPath& pd) {
  if (pd.rho.empty()) throw ConfigError("empty path");
  std::ostringstream out;
  out.precision(17);
  out << "x";
  for (double t : pd.t) out << ",t=" << t;
  out << "\n";
  const Grid1D& g = pd.rho.front().grid;
  for (int i = 0; i < g.n; ++i) {
    out << g.center(i);
    for (const auto& rho : pd.rho) out << "," << rho.v[i];
    out << "\n";
  }
  write_text_file(path, out.str());
}

}  // namespace otlab
