#pragma once

#include <string>
#include <vector>

#include "otlab/grid2d.hpp"
#include "otlab/star_body.hpp"
#include "otlab/transport.hpp"
#include "otlab/verify.hpp"

namespace otlab {

// Reports carry no clocks: rerunning with the same options and seed yields
// byte-identical files.  Wall time and start stamps go to the side-car
// metadata file instead.
std::string render_json(const std::vector<VerificationResult>& results);
std::string render_markdown(const std::vector<VerificationResult>& results);

struct RunMetadata {
  std::string tool;
  std::string started_at;  // ISO 8601, UTC
  double seconds = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};
std::string render_metadata(const RunMetadata& meta);

// 0 when every suite matched its expected verdict, 3 otherwise
int verdict_exit_code(const std::vector<VerificationResult>& results);

void write_text_file(const std::string& path, const std::string& content);

// density table: one "lo,hi,n" header line, then n density values
void write_density_csv(const std::string& path, const GridDensity1D& mu);
GridDensity1D read_density_csv(const std::string& path);

// {"bounds": [lo, hi], "resolution": n, "values": [... row-major ...]}
void write_density2d_json(const std::string& path, const GridDensity2D& mu);

// portable graymap of a node mask, white inside
void write_pgm(const std::string& path, const NodeRaster& raster);

// first column x, one column per time; header row carries the times
void write_geodesic_csv(const std::string& path, const GeodesicPath& path_data);

}  // namespace otlab
