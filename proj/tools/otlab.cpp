// command line front end: compute primitives on 1-D measures and run the
// verification suites
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "otlab/functionals.hpp"
#include "otlab/ou.hpp"
#include "otlab/report.hpp"
#include "otlab/transport.hpp"
#include "otlab/verify.hpp"

namespace {

using namespace otlab;

// measure mini-language:
//   gauss:MEAN:VAR | unif:A:B | trunc-gauss:A:B | grid:PATH
struct MeasureSpec {
  std::string text;
  std::optional<GridDensity1D> from_file;  // set for grid: specs
  double extent = 1.0;                     // scale hint for the working grid
};

MeasureSpec parse_measure(const std::string& text) {
  MeasureSpec spec;
  spec.text = text;
  auto split = [&](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      std::size_t p = s.find(':', start);
      parts.push_back(s.substr(start, p - start));
      if (p == std::string::npos) break;
      start = p + 1;
    }
    return parts;
  };
  auto parts = split(text);
  auto want = [&](std::size_t n) {
    if (parts.size() != n)
      throw ConfigError("bad measure spec (wrong field count): " + text);
  };
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + s + "' in measure spec: " + text);
    }
  };
  if (parts[0] == "gauss") {
    want(3);
    double m = num(parts[1]), v = num(parts[2]);
    if (v <= 0.0) throw ConfigError("variance must be positive: " + text);
    spec.extent = std::abs(m) + std::sqrt(v);
  } else if (parts[0] == "unif" || parts[0] == "trunc-gauss") {
    want(3);
    double a = num(parts[1]), b = num(parts[2]);
    if (!(a < b)) throw ConfigError("need a < b: " + text);
    spec.extent = std::max(std::abs(a), std::abs(b)) / 2.0;
  } else if (parts[0] == "grid") {
    want(2);
    spec.from_file = read_density_csv(parts[1]);
  } else {
    throw ConfigError("unknown measure family: " + text);
  }
  return spec;
}

GridDensity1D realize(const MeasureSpec& spec, const Grid1D& grid) {
  if (spec.from_file) {
    if (!(spec.from_file->grid == grid))
      throw ConfigError("grid file does not match the working grid: " +
                        spec.text);
    return *spec.from_file;
  }
  auto parts_at = [&](int k) {
    std::string s = spec.text;
    for (int i = 0; i < k; ++i) s = s.substr(s.find(':') + 1);
    auto p = s.find(':');
    return std::stod(p == std::string::npos ? s : s.substr(0, p));
  };
  if (spec.text.rfind("gauss:", 0) == 0)
    return GridDensity1D::gaussian(grid, parts_at(1), parts_at(2));
  if (spec.text.rfind("unif:", 0) == 0)
    return GridDensity1D::uniform(grid, parts_at(1), parts_at(2));
  return GridDensity1D::truncated_gaussian(grid, parts_at(1), parts_at(2));
}

// one working grid covering every input; grid files fix it outright
Grid1D working_grid(const std::vector<const MeasureSpec*>& specs, int cells) {
  for (const auto* s : specs)
    if (s->from_file) return s->from_file->grid;
  double extent = 1.0;
  for (const auto* s : specs) extent = std::max(extent, s->extent);
  return gaussian_grid(extent, cells);
}

ReferenceMeasure1D parse_reference(const std::string& text, const Grid1D& g) {
  if (text == "gauss") return ReferenceMeasure1D::standard_gaussian(g);
  if (text.rfind("radial:", 0) == 0) {
    double p = std::stod(text.substr(7));
    return ReferenceMeasure1D(HomogeneousPotential1D::radial(p), g);
  }
  throw ConfigError("unknown reference (want gauss or radial:P): " + text);
}

// --nu names the reference as a measure spec; only centered gaussians keep
// the potential form the functionals need
ReferenceMeasure1D reference_from_measure(const std::string& text,
                                          const Grid1D& g) {
  if (text.rfind("gauss:", 0) == 0) {
    auto mid = text.find(':', 6);
    if (mid != std::string::npos) {
      double mean = std::stod(text.substr(6, mid - 6));
      double var = std::stod(text.substr(mid + 1));
      if (mean == 0.0 && var > 0.0) {
        double slope = 1.0 / std::sqrt(2.0 * var);
        return ReferenceMeasure1D(HomogeneousPotential1D{2.0, slope, slope},
                                  g);
      }
    }
  }
  throw ConfigError(
      "reference measure must be a centered gaussian (gauss:0:VAR); "
      "other references go through --ref: " + text);
}

VerifyOptions apply_preset(const std::string& preset) {
  VerifyOptions opt;
  if (preset == "full" || preset == "paper-examples") return opt;
  if (preset == "smoke") {
    opt.cells_1d = 1024;
    opt.cells_2d = 256;
    opt.time_points = 17;
    opt.bm_pairs = 6;
    opt.concavity_pairs = 6;
    opt.cd0n_pairs = 6;
    opt.variational_bodies = 3;
    return opt;
  }
  throw ConfigError("unknown preset: " + preset);
}

void apply_config_file(const std::string& path, VerifyOptions& opt) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "cells_1d") opt.cells_1d = val.get<int>();
    else if (key == "cells_2d") opt.cells_2d = val.get<int>();
    else if (key == "time_points") opt.time_points = val.get<int>();
    else if (key == "seed") opt.seed = val.get<std::uint64_t>();
    else if (key == "bm_pairs") opt.bm_pairs = val.get<int>();
    else if (key == "concavity_pairs") opt.concavity_pairs = val.get<int>();
    else if (key == "cd0n_pairs") opt.cd0n_pairs = val.get<int>();
    else if (key == "variational_bodies")
      opt.variational_bodies = val.get<int>();
    else if (key == "threads") opt.threads = val.get<unsigned>();
    else throw ConfigError("unknown config key: " + key);
  }
  if (opt.cells_1d < 64 || opt.cells_2d < 32 || opt.time_points < 5 ||
      opt.bm_pairs < 1 || opt.concavity_pairs < 1 || opt.cd0n_pairs < 1 ||
      opt.variational_bodies < 1)
    throw ConfigError("config value out of range");
}

std::string iso_now() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// closed-form family N(0, s^2): the distances and entropies the scaling
// argument predicts, next to the grid pipeline's numbers
void print_examples_table(int cells) {
  std::printf("closed-form Gaussian family, %d cells\n", cells);
  std::printf("%8s %12s %12s %12s %12s %12s %12s\n", "scale", "D", "D(exact)",
              "I", "I(exact)", "W2", "W2(exact)");
  for (double s : {0.25, 0.5, 0.9, 1.1, 2.0, 10.0}) {
    Grid1D grid = gaussian_grid(s, cells);
    ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
    GridDensity1D mu = GridDensity1D::gaussian(grid, 0.0, s * s);
    double d = relative_entropy(mu, ref);
    double i = fisher_information(mu, ref);
    double w = w2_1d(mu, ref.as_grid_density());
    double de = -std::log(s) + (s * s - 1.0) / 2.0;
    double ie = (s * s - 1.0) * (s * s - 1.0) / (s * s);
    std::printf("%8.2f %12.6f %12.6f %12.6f %12.6f %12.6f %12.6f\n", s, d, de,
                i, ie, w, std::abs(s - 1.0));
  }
}

int run_verify(const std::string& suite, const std::string& preset,
               const std::string& config_path, std::optional<std::uint64_t> seed,
               std::optional<int> bm_pairs, std::optional<double> bm_p,
               std::optional<unsigned> threads, std::string out_dir) {
  VerifyOptions opt = apply_preset(preset);
  if (!config_path.empty()) apply_config_file(config_path, opt);
  if (seed) opt.seed = *seed;
  if (bm_pairs) opt.bm_pairs = *bm_pairs;
  if (bm_p) opt.bm_p = *bm_p;
  if (threads) opt.threads = *threads;
  if (opt.bm_pairs < 1) throw ConfigError("--pairs must be at least 1");

  if (preset == "paper-examples") print_examples_table(opt.cells_1d);

  RunMetadata meta;
  meta.tool = "otlab";
  meta.started_at = iso_now();
  meta.seed = opt.seed;
  meta.threads = opt.threads;
  auto t0 = std::chrono::steady_clock::now();

  auto results = run_suite(suite, opt);
  meta.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  for (const auto& r : results) {
    std::printf("%-28s %-9s min margin %+.3e  (%zu cases, %s expected)%s\n",
                r.suite.c_str(), r.holds ? "holds" : "violated", r.min_margin,
                r.cases.size(), r.expect_hold ? "holds" : "violation",
                r.matches_expectation ? "" : "  <-- MISMATCH");
  }

  if (out_dir.empty())
    if (const char* env = std::getenv("OTLAB_OUT")) out_dir = env;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/report.json", render_json(results));
    write_text_file(out_dir + "/report.md", render_markdown(results));
    write_text_file(out_dir + "/report.meta.json", render_metadata(meta));
    std::printf("report written to %s\n", out_dir.c_str());
  }
  return verdict_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for transport interpolations and "
               "entropy functionals"};
  app.require_subcommand(1);

  // ---- compute ----
  auto* compute = app.add_subcommand("compute", "evaluate one primitive");
  compute->require_subcommand(1);
  std::string a_text, b_text, ref_text = "gauss", out_path;
  int cells = 4096;
  double t_value = 0.5;

  auto add_common = [&](CLI::App* sub, bool needs_b) {
    sub->add_option("--mu", a_text, "first measure")->required();
    if (needs_b) sub->add_option("--nu", b_text, "second measure")->required();
    sub->add_option("--cells", cells, "grid resolution");
  };
  auto* c_w2 = compute->add_subcommand("w2", "quadratic transport distance");
  add_common(c_w2, true);
  auto* c_h = compute->add_subcommand("entropy", "differential entropy");
  add_common(c_h, false);
  std::string nu_ref_text;
  auto* c_rel = compute->add_subcommand("relent", "relative entropy");
  add_common(c_rel, false);
  auto* rel_ref =
      c_rel->add_option("--ref", ref_text, "reference: gauss or radial:P");
  c_rel->add_option("--nu", nu_ref_text, "reference as a measure spec "
                    "(centered gaussian)")
      ->excludes(rel_ref);
  auto* c_fi = compute->add_subcommand("fisher", "relative Fisher information");
  add_common(c_fi, false);
  auto* fi_ref =
      c_fi->add_option("--ref", ref_text, "reference: gauss or radial:P");
  c_fi->add_option("--nu", nu_ref_text, "reference as a measure spec "
                   "(centered gaussian)")
      ->excludes(fi_ref);
  auto* c_in = compute->add_subcommand("interp", "displacement interpolant");
  add_common(c_in, true);
  c_in->add_option("--t", t_value, "interpolation time in [0,1]");
  c_in->add_option("--out", out_path, "write the density as CSV");
  auto* c_ou = compute->add_subcommand("ou-evolve", "heat flow toward the "
                                       "Gaussian");
  add_common(c_ou, false);
  c_ou->add_option("--t", t_value, "flow time")->required();
  c_ou->add_option("--out", out_path, "write the density as CSV");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite, preset = "full", config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<int> bm_pairs;
  std::optional<double> bm_p;
  verify->add_option("suite", suite, "one of: lsi, talagrand, hwi, sharpness, "
                     "ou-decay, cd0n, concavity, conv2n, bm, gamma2, "
                     "variational, all")
      ->required();
  verify->add_option("--preset", preset, "paper-examples, smoke, or full");
  verify->add_option("--config", config_path, "JSON file with option overrides");
  verify->add_option("--seed", seed, "random stream seed");
  verify->add_option("--pairs", bm_pairs, "random star-body pairs in the bm "
                     "sweep");
  verify->add_option("--p", bm_p, "restrict bm to one homogeneity exponent");
  verify->add_option("--threads", threads, "worker threads (0 = all cores)");
  verify->add_option("--out", out_dir,
                     "directory for report.json/report.md (or $OTLAB_OUT)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed())
      return run_verify(suite, preset, config_path, seed, bm_pairs, bm_p,
                        threads, out_dir);

    // compute path
    MeasureSpec sa = parse_measure(a_text);
    std::optional<MeasureSpec> sb;
    if (!b_text.empty()) sb = parse_measure(b_text);
    std::optional<MeasureSpec> snu;
    if (!nu_ref_text.empty()) snu = parse_measure(nu_ref_text);
    std::vector<const MeasureSpec*> all{&sa};
    if (sb) all.push_back(&*sb);
    if (snu) all.push_back(&*snu);
    Grid1D grid = working_grid(all, cells);
    GridDensity1D mu = realize(sa, grid);
    auto reference = [&] {
      return nu_ref_text.empty() ? parse_reference(ref_text, grid)
                                 : reference_from_measure(nu_ref_text, grid);
    };

    if (c_w2->parsed()) {
      std::printf("w2 = %.12g\n", w2_1d(mu, realize(*sb, grid)));
    } else if (c_h->parsed()) {
      std::printf("entropy = %.12g\n", entropy(mu));
    } else if (c_rel->parsed()) {
      ReferenceMeasure1D ref = reference();
      std::printf("relative_entropy = %.12g\n", relative_entropy(mu, ref));
    } else if (c_fi->parsed()) {
      ReferenceMeasure1D ref = reference();
      FisherDiagnostics diag;
      double fi = fisher_information(mu, ref, &diag);
      std::printf("fisher_information = %.12g\n", fi);
      if (diag.boundary_jump)
        std::printf("note: density jump at a support edge\n");
      if (diag.disconnected_support)
        std::printf("note: support is disconnected\n");
    } else if (c_in->parsed()) {
      if (t_value < 0.0 || t_value > 1.0)
        throw ConfigError("interpolation time must lie in [0,1]");
      Quantile1DMap map = quantile_map(mu, realize(*sb, grid));
      GridDensity1D rho = interpolate(map, mu, t_value, grid);
      std::printf("w2 = %.12g\nentropy(t) = %.12g\n", map.w2, entropy(rho));
      if (!out_path.empty()) write_density_csv(out_path, rho);
    } else if (c_ou->parsed()) {
      if (t_value < 0.0) throw ConfigError("flow time must be nonnegative");
      GridDensity1D rho = ou_evolve(mu, t_value);
      ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
      std::printf("relative_entropy(t) = %.12g\n", relative_entropy(rho, ref));
      if (!out_path.empty()) write_density_csv(out_path, rho);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
