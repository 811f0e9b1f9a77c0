#include "otlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "otlab/grid2d.hpp"
#include "otlab/transport.hpp"

namespace otlab {

namespace {

struct StopWatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, x);
  return buf;
}

// closed forms for N(0, s^2) against the standard Gaussian
double gauss_rel_entropy(double s) { return -std::log(s) + (s * s - 1.0) / 2.0; }
double gauss_fisher(double s) {
  double d = s * s - 1.0;
  return d * d / (s * s);
}

double lsi_middle(double d) { return 2.0 * (std::exp(2.0 * d) - 1.0); }

// undivided second differences; concavity means all entries <= 0
std::vector<double> second_differences(const std::vector<double>& g) {
  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < g.size(); ++k)
    out.push_back(g[k + 1] - 2.0 * g[k] + g[k - 1]);
  return out;
}

GridDensity1D damped_gaussian(const Grid1D& g,
                              const std::function<double(double)>& w) {
  return GridDensity1D::from_function(
      g, [&](double x) { return std::exp(-0.5 * x * x - w(x)); });
}

}  // namespace

void VerificationResult::finish() {
  min_margin = kInf;
  worst_case.clear();
  for (const auto& c : cases) {
    if (c.margin < min_margin) {
      min_margin = c.margin;
      worst_case = c.id;
    }
  }
  holds = !cases.empty() && min_margin >= -tolerance;
  matches_expectation = (holds == expect_hold);
}

std::vector<LabeledDensity> even_slc_family(const Grid1D& grid) {
  std::vector<LabeledDensity> fam;
  const double scales[] = {0.30, 0.40, 0.50, 0.60, 0.70,
                           0.80, 0.90, 0.95, 1.00};
  for (double s : scales)
    fam.push_back({"scale:" + fmt("%.2f", s),
                   GridDensity1D::gaussian(grid, 0.0, s * s)});
  const double cuts[] = {0.5, 1.0, 1.5, 2.0, 3.0};
  for (double a : cuts)
    fam.push_back({"trunc-smooth:" + fmt("%.1f", a),
                   ou_evolve(GridDensity1D::truncated_gaussian(grid, -a, a),
                             0.05)});
  const double quartic[] = {0.05, 0.2, 0.5, 1.0};
  for (double b : quartic)
    fam.push_back({"quartic:" + fmt("%.2f", b),
                   damped_gaussian(grid, [b](double x) {
                     return b * x * x * x * x;
                   })});
  const double coshb[] = {0.3, 1.0};
  for (double b : coshb)
    fam.push_back({"cosh:" + fmt("%.1f", b), damped_gaussian(grid, [b](double x) {
                     return b * (std::cosh(std::min(std::abs(x), 40.0)) - 1.0);
                   })});
  const double sech[] = {1.0, 2.0};
  for (double k : sech)
    fam.push_back({"logcosh:" + fmt("%.1f", k),
                   damped_gaussian(grid, [k](double x) {
                     double ax = std::abs(x);
                     // log cosh x, overflow-safe for large x
                     double lc = ax > 20.0 ? ax - std::numbers::ln2
                                           : std::log(std::cosh(ax));
                     return k * lc;
                   })});
  const double sextic[] = {0.02, 0.1};
  for (double b : sextic)
    fam.push_back({"sextic:" + fmt("%.2f", b),
                   damped_gaussian(grid, [b](double x) {
                     return b * std::pow(x, 6);
                   })});
  fam.push_back({"mixed:4+6", damped_gaussian(grid, [](double x) {
                   return 0.1 * std::pow(x, 4) + 0.05 * std::pow(x, 6);
                 })});
  return fam;
}

std::pair<LabeledDensity, LabeledDensity> random_pair_1d(const Grid1D& grid,
                                                         std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto draw = [&](int tag) -> LabeledDensity {
    int fam = (int)(rng.next() % 5);
    double m = rng.uniform(-1.5, 1.5);
    switch (fam) {
      case 0: {
        double s = rng.uniform(0.45, 1.6);
        return {"g" + std::to_string(tag),
                GridDensity1D::gaussian(grid, m, s * s)};
      }
      case 1: {
        double w = rng.uniform(0.3, 2.0);
        return {"u" + std::to_string(tag),
                GridDensity1D::uniform(grid, m - w, m + w)};
      }
      case 2: {
        double a = rng.uniform(0.7, 2.2);
        return {"t" + std::to_string(tag),
                GridDensity1D::truncated_gaussian(grid, m - a, m + a)};
      }
      case 3: {
        double m2 = rng.uniform(-1.5, 1.5), w = rng.uniform(0.3, 0.7);
        double s1 = rng.uniform(0.5, 1.2), s2 = rng.uniform(0.5, 1.2);
        return {"m" + std::to_string(tag),
                GridDensity1D::from_function(grid, [=](double x) {
                  double a1 = (x - m) / s1, a2 = (x - m2) / s2;
                  return w / s1 * std::exp(-0.5 * a1 * a1) +
                         (1.0 - w) / s2 * std::exp(-0.5 * a2 * a2);
                })};
      }
      default: {
        double b = rng.uniform(0.05, 0.6);
        return {"q" + std::to_string(tag),
                GridDensity1D::from_function(grid, [=](double x) {
                  double d = x - m;
                  return std::exp(-0.5 * d * d - b * d * d * d * d);
                })};
      }
    }
  };
  LabeledDensity a = draw(0);
  LabeledDensity b = draw(1);
  return {std::move(a), std::move(b)};
}

VerificationResult check_lsi(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "lsi";
  r.claim = "4 D <= 2n (e^{2D/n} - 1) <= I for even strongly log-concave data";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  r.params = {{"cells", (double)opt.cells_1d}};

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  auto fam = even_slc_family(grid);
  r.params["family"] = (double)fam.size();
  for (const auto& f : fam) {
    CaseResult c;
    c.id = f.id;
    double d = relative_entropy(f.mu, ref);
    FisherDiagnostics diag;
    double i = fisher_information(f.mu, ref, &diag);
    double mid = lsi_middle(d);
    c.values = {{"D", d},
                {"I", i},
                {"middle", mid},
                {"lower_gap", mid - 4.0 * d},
                {"upper_gap", i - mid}};
    if (diag.boundary_jump || diag.disconnected_support) {
      c.caveat = "infinite relative Fisher information";
      c.margin = -kInf;
    } else {
      c.margin = std::min(mid - 4.0 * d, i - mid);
    }
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_lsi_counterexample(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "lsi-counterexample";
  r.claim = "the same chain breaks on Gaussian scalings away from 1";
  r.tolerance = 1e-3;
  r.expect_hold = false;

  for (double s : {2.0, 10.0}) {
    Grid1D grid = gaussian_grid(s, opt.cells_1d);
    ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
    GridDensity1D mu = GridDensity1D::gaussian(grid, 0.0, s * s);
    double d = relative_entropy(mu, ref);
    double i = fisher_information(mu, ref);
    double mid = lsi_middle(d);
    CaseResult c;
    c.id = "scale:" + fmt("%.0f", s);
    c.values = {{"D", d},
                {"I", i},
                {"middle", mid},
                {"upper_gap", i - mid},
                {"closed_form_D", gauss_rel_entropy(s)},
                {"closed_form_I", gauss_fisher(s)}};
    c.margin = std::min(mid - 4.0 * d, i - mid);
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_talagrand(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "talagrand";
  r.claim =
      "W2^2 <= -n log cos(sqrt(2/n) W2) <= D for even strongly log-concave "
      "data";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  r.params = {{"cells", (double)opt.cells_1d}};

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  GridDensity1D gamma = ref.as_grid_density();
  CoefficientSet cs{1};
  for (const auto& f : even_slc_family(grid)) {
    CaseResult c;
    c.id = f.id;
    double d = relative_entropy(f.mu, ref);
    double w2 = w2_1d(f.mu, gamma);
    double cosv = cs.c(w2);
    if (cosv <= 0.0) {
      c.caveat = "distance outside the trigonometric window";
      c.margin = -kInf;
      r.cases.push_back(std::move(c));
      continue;
    }
    double mid = -std::log(cosv);
    c.values = {{"D", d},
                {"W2", w2},
                {"middle", mid},
                {"lower_gap", mid - w2 * w2},
                {"upper_gap", d - mid}};
    c.margin = std::min(mid - w2 * w2, d - mid);
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_talagrand_counterexample(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "talagrand-counterexample";
  r.claim = "the trigonometric middle term exceeds D for N(0,4)";
  r.tolerance = 1e-3;
  r.expect_hold = false;

  double s = 2.0;
  Grid1D grid = gaussian_grid(s, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  GridDensity1D mu = GridDensity1D::gaussian(grid, 0.0, s * s);
  double d = relative_entropy(mu, ref);
  double w2 = w2_1d(mu, ref.as_grid_density());
  CoefficientSet cs{1};
  double mid = -std::log(cs.c(w2));
  CaseResult c;
  c.id = "scale:2";
  c.values = {{"D", d}, {"W2", w2}, {"middle", mid}, {"upper_gap", d - mid}};
  c.margin = std::min(mid - w2 * w2, d - mid);
  r.cases.push_back(std::move(c));
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

namespace {

// one HWI case: e^{(D(mu0) - D(mu1))/n} <= c(W2) + s(W2) sqrt(I(mu0)) / n
CaseResult hwi_case(const std::string& id, double d0, double d1, double i0,
                    double w2, int n) {
  CoefficientSet cs{n};
  CaseResult c;
  c.id = id;
  double lhs = std::exp((d0 - d1) / n);
  double rhs = cs.c(w2) + cs.s(w2) * std::sqrt(std::max(i0, 0.0)) / n;
  c.values = {{"lhs", lhs}, {"rhs", rhs}, {"D0", d0}, {"D1", d1},
              {"I0", i0},   {"W2", w2}};
  c.margin = rhs - lhs;
  return c;
}

}  // namespace

VerificationResult check_hwi(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "hwi";
  r.claim =
      "e^{(D(mu0)-D(mu1))/n} <= c(W2) + s(W2) sqrt(I(mu0))/n in both "
      "orientations";
  r.tolerance = 1e-3;
  r.expect_hold = true;

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  GridDensity1D gamma = ref.as_grid_density();
  const double scales[] = {0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95, 1.0};
  for (double s : scales) {
    GridDensity1D mu = GridDensity1D::gaussian(grid, 0.0, s * s);
    double d = relative_entropy(mu, ref);
    double i = fisher_information(mu, ref);
    double w2 = w2_1d(mu, gamma);
    r.cases.push_back(
        hwi_case("fwd:" + fmt("%.2f", s), d, 0.0, i, w2, 1));
    r.cases.push_back(hwi_case("rev:" + fmt("%.2f", s), 0.0, d, 0.0, w2, 1));
  }
  // product measures: diagonal Gaussian covariances, closed forms per axis
  const double diag[][2] = {{0.5, 0.8}, {0.3, 0.9}, {0.7, 0.7}, {0.9, 0.95}};
  for (auto& sv : diag) {
    double d = gauss_rel_entropy(sv[0]) + gauss_rel_entropy(sv[1]);
    double i = gauss_fisher(sv[0]) + gauss_fisher(sv[1]);
    double w2 = std::hypot(1.0 - sv[0], 1.0 - sv[1]);
    std::string id = fmt("%.2f", sv[0]) + "x" + fmt("%.2f", sv[1]);
    r.cases.push_back(hwi_case("fwd2d:" + id, d, 0.0, i, w2, 2));
    r.cases.push_back(hwi_case("rev2d:" + id, 0.0, d, 0.0, w2, 2));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_sharpness_limits(const VerifyOptions&) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "sharpness";
  r.claim = "chain-gap ratios approach 1 as the Gaussian scale tends to 1";
  r.tolerance = 0.0;
  r.expect_hold = true;

  CoefficientSet cs{1};
  const double scales[] = {0.9, 0.99, 0.999};
  double prev_dev = 1.0;
  for (double s : scales) {
    double d = gauss_rel_entropy(s);
    double i = gauss_fisher(s);
    double w2 = 1.0 - s;
    double lmid = lsi_middle(d);
    double tmid = -std::log(cs.c(w2));
    double hwi_lhs = std::exp(d);
    double hwi_rhs = cs.c(w2) + cs.s(w2) * std::sqrt(i);
    double ratios[] = {lmid / (4.0 * d), i / lmid, tmid / (w2 * w2), d / tmid,
                       hwi_rhs / hwi_lhs};
    double dev = 0.0;
    for (double q : ratios) dev = std::max(dev, std::abs(q - 1.0));
    CaseResult c;
    c.id = "scale:" + fmt("%.3f", s);
    c.values = {{"lsi_lower_ratio", ratios[0]},
                {"lsi_upper_ratio", ratios[1]},
                {"talagrand_lower_ratio", ratios[2]},
                {"talagrand_upper_ratio", ratios[3]},
                {"hwi_ratio", ratios[4]},
                {"max_deviation", dev}};
    // each refinement must tighten, and the finest must sit within 1e-3
    c.margin = prev_dev - dev;
    if (s == scales[2]) c.margin = std::min(c.margin, 1e-3 - dev);
    prev_dev = dev;
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_ou_decay(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "ou-decay";
  r.claim =
      "D(P*_t mu) <= e^{-4t} D(mu) for even strongly log-concave mu, with "
      "semigroup composition and entropy production as controls";
  r.tolerance = 1e-3;
  r.expect_hold = true;

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  std::vector<LabeledDensity> data;
  data.push_back({"half-width", GridDensity1D::gaussian(grid, 0.0, 0.25)});
  data.push_back({"trunc:1", GridDensity1D::truncated_gaussian(grid, -1, 1)});
  data.push_back({"quartic:0.2", damped_gaussian(grid, [](double x) {
                    return 0.2 * x * x * x * x;
                  })});

  const double times[] = {0.1, 0.5, 1.0, 2.0};
  for (const auto& m : data) {
    double d0 = relative_entropy(m.mu, ref);
    for (double t : times) {
      GridDensity1D mt = ou_evolve(m.mu, t);
      double dt = relative_entropy(mt, ref);
      CaseResult c;
      c.id = m.id + "@t=" + fmt("%.1f", t);
      c.values = {{"D0", d0}, {"Dt", dt}, {"bound", std::exp(-4.0 * t) * d0}};
      c.margin = std::exp(-4.0 * t) * d0 - dt;
      r.cases.push_back(std::move(c));
    }
    // composition: evolving 0.3 then 0.7 matches evolving 1.0
    GridDensity1D once = ou_evolve(m.mu, 1.0);
    GridDensity1D twice = ou_evolve(ou_evolve(m.mu, 0.3), 0.7);
    double tv = 0.0;
    for (int i = 0; i < grid.n; ++i) tv += std::abs(once.v[i] - twice.v[i]);
    tv *= grid.h();
    CaseResult c;
    c.id = m.id + "@compose";
    c.values = {{"tv", tv}};
    c.margin = 1e-4 - tv;
    r.cases.push_back(std::move(c));
  }
  // entropy production: -dD/dt equals the relative Fisher information
  for (int k : {0, 2}) {
    const auto& m = data[k];
    const double t0 = 0.3, dt = 1e-3;
    double dp = relative_entropy(ou_evolve(m.mu, t0 + dt), ref);
    double dm = relative_entropy(ou_evolve(m.mu, t0 - dt), ref);
    double slope = (dp - dm) / (2.0 * dt);
    double fisher = fisher_information(ou_evolve(m.mu, t0), ref);
    CaseResult c;
    c.id = m.id + "@production";
    double rel = std::abs(slope + fisher) / std::max(fisher, 1e-12);
    c.values = {{"slope", slope}, {"fisher", fisher}, {"relative_error", rel}};
    c.margin = 5e-2 - rel;
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_entropic_cd0n(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "cd0n";
  r.claim = "exp(h/n) is concave along quantile geodesics";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  r.params = {{"pairs", (double)opt.cd0n_pairs},
              {"time_points", (double)opt.time_points}};

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  auto tg = uniform_time_grid(opt.time_points);
  auto run_case = [&](const std::string& id, const GridDensity1D& a,
                      const GridDensity1D& b, double tol_override) {
    Quantile1DMap map = quantile_map(a, b);
    std::vector<double> g;
    for (double t : tg) g.push_back(std::exp(entropy_along(map, a, t)));
    double gmax = *std::max_element(g.begin(), g.end());
    double worst = 0.0;
    for (double dd : second_differences(g)) worst = std::max(worst, dd);
    CaseResult c;
    c.id = id;
    c.values = {{"max_second_diff", worst}, {"scale", gmax}, {"w2", map.w2}};
    c.margin = tol_override > 0.0 ? tol_override - worst : -worst / gmax;
    return c;
  };

  for (int k = 0; k < opt.cd0n_pairs; ++k) {
    auto [a, b] = random_pair_1d(grid, substream(opt.seed, 40 + k));
    r.cases.push_back(
        run_case("pair" + std::to_string(k) + ":" + a.id + "-" + b.id, a.mu,
                 b.mu, 0.0));
  }
  // affine anchors: Gaussian-to-Gaussian and uniform-to-uniform paths make
  // exp(h) exactly linear in t
  r.cases.push_back(run_case("gauss-affine",
                             GridDensity1D::gaussian(grid, 0.0, 0.25),
                             GridDensity1D::gaussian(grid, 0.0, 2.25), 1e-4));
  r.cases.push_back(run_case("uniform-affine",
                             GridDensity1D::uniform(grid, -1.0, 1.0),
                             GridDensity1D::uniform(grid, -2.5, 2.5), 1e-4));
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

namespace {

// radially decreasing relative to the standard Gaussian
LabeledDensity draw_radial_decreasing(const Grid1D& grid, SplitMix64& rng) {
  switch (rng.next() % 4) {
    case 0: {
      double s = rng.uniform(0.4, 1.0);
      return {"scale" + fmt("%.2f", s),
              GridDensity1D::gaussian(grid, 0.0, s * s)};
    }
    case 1: {
      double a = rng.uniform(0.7, 2.2);
      return {"trunc" + fmt("%.2f", a),
              GridDensity1D::truncated_gaussian(grid, -a, a)};
    }
    case 2: {
      double b = rng.uniform(0.05, 1.0);
      return {"quartic" + fmt("%.2f", b), damped_gaussian(grid, [b](double x) {
                return b * x * x * x * x;
              })};
    }
    default: {
      double k = rng.uniform(0.5, 2.0);
      return {"logcosh" + fmt("%.2f", k), damped_gaussian(grid, [k](double x) {
                double ax = std::abs(x);
                double lc = ax > 20.0 ? ax - std::numbers::ln2
                                      : std::log(std::cosh(ax));
                return k * lc;
              })};
    }
  }
}

}  // namespace

VerificationResult check_displacement_concavity(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "concavity";
  r.claim =
      "exp(-D/2) is concave along geodesics between measures radially "
      "decreasing relative to the Gaussian";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  r.params = {{"pairs", (double)opt.concavity_pairs},
              {"time_points", (double)opt.time_points}};

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  auto tg = uniform_time_grid(opt.time_points);
  for (int k = 0; k < opt.concavity_pairs; ++k) {
    SplitMix64 rng(substream(opt.seed, 300 + k));
    LabeledDensity a = draw_radial_decreasing(grid, rng);
    LabeledDensity b = draw_radial_decreasing(grid, rng);
    Quantile1DMap map = quantile_map(a.mu, b.mu);
    std::vector<double> g;
    for (double t : tg)
      g.push_back(std::exp(-0.5 * relative_entropy_along(map, a.mu, t, ref)));
    double gmax = *std::max_element(g.begin(), g.end());
    double worst = 0.0;
    for (double dd : second_differences(g)) worst = std::max(worst, dd);
    CaseResult c;
    c.id = "pair" + std::to_string(k) + ":" + a.id + "-" + b.id;
    c.values = {{"max_second_diff", worst}, {"scale", gmax}, {"w2", map.w2}};
    if (!radial_monotonicity_check(a.mu, ref).holds ||
        !radial_monotonicity_check(b.mu, ref).holds)
      c.caveat = "endpoint failed the radial monotonicity precondition";
    c.margin = -worst / gmax;
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_concavity_counterexample(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "concavity-counterexample";
  r.claim = "exponent 1/n in place of (p-1)/(pn) breaks concavity";
  r.tolerance = 1e-3;
  r.expect_hold = false;

  // 9 time points: wide enough steps that the convex stretch of
  // exp(-D) between N(0,1) and N(0,4) shows up in the second differences
  Grid1D grid = gaussian_grid(2.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  GridDensity1D a = GridDensity1D::gaussian(grid, 0.0, 1.0);
  GridDensity1D b = GridDensity1D::gaussian(grid, 0.0, 4.0);
  Quantile1DMap map = quantile_map(a, b);
  auto tg = uniform_time_grid(9);
  std::vector<double> g;
  for (double t : tg)
    g.push_back(std::exp(-relative_entropy_along(map, a, t, ref)));
  double worst = 0.0;
  for (double dd : second_differences(g)) worst = std::max(worst, dd);
  CaseResult c;
  c.id = "gauss-1-to-4";
  c.values = {{"max_second_diff", worst}};
  c.margin = -worst;
  r.cases.push_back(std::move(c));
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_2n_convexity_global(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "conv2n";
  r.claim =
      "e^{-D(mu_t)/n} >= sigma^{(1-t)}(W2) e^{-D(mu_0)/n} + sigma^{(t)}(W2) "
      "e^{-D(mu_1)/n} along geodesics of even strongly log-concave measures";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  r.params = {{"time_points", (double)opt.time_points}};

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
  CoefficientSet cs{1};
  auto tg = uniform_time_grid(opt.time_points);

  struct Pair {
    std::string id;
    GridDensity1D a, b;
  };
  std::vector<Pair> pairs;
  pairs.push_back({"half-to-std", GridDensity1D::gaussian(grid, 0.0, 0.25),
                   GridDensity1D::gaussian(grid, 0.0, 1.0)});
  pairs.push_back({"trunc-to-std",
                   GridDensity1D::truncated_gaussian(grid, -1.0, 1.0),
                   GridDensity1D::gaussian(grid, 0.0, 1.0)});
  pairs.push_back({"half-to-0.8", GridDensity1D::gaussian(grid, 0.0, 0.25),
                   GridDensity1D::gaussian(grid, 0.0, 0.64)});
  pairs.push_back({"quartic-to-std", damped_gaussian(grid, [](double x) {
                     return 0.3 * x * x * x * x;
                   }),
                   GridDensity1D::gaussian(grid, 0.0, 1.0)});
  pairs.push_back({"gauss-0.6-to-std", GridDensity1D::gaussian(grid, 0.0, 0.36),
                   GridDensity1D::gaussian(grid, 0.0, 1.0)});

  for (const auto& pr : pairs) {
    Quantile1DMap map = quantile_map(pr.a, pr.b);
    double theta = map.w2;
    double e0 = std::exp(-relative_entropy_along(map, pr.a, 0.0, ref));
    double e1 = std::exp(-relative_entropy_along(map, pr.a, 1.0, ref));
    double margin = kInf, gain = kInf;
    for (double t : tg) {
      double lhs = std::exp(-relative_entropy_along(map, pr.a, t, ref));
      double rhs = cs.sigma(1.0 - t, theta) * e0 + cs.sigma(t, theta) * e1;
      double plain = (1.0 - t) * e0 + t * e1;
      margin = std::min(margin, lhs - rhs);
      gain = std::min(gain, rhs - plain);
    }
    CaseResult c;
    c.id = pr.id;
    c.values = {{"w2", theta}, {"min_coefficient_gain", gain}};
    c.margin = margin;
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_bm_star_bodies(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "bm";
  r.claim =
      "nu((1-t)K0 + tK1)^a >= (1-t) nu(K0)^a + t nu(K1)^a, a = (p-1)/(pn), "
      "bracketed between inner and outer rasters";
  r.tolerance = 0.0;
  r.expect_hold = true;

  // window sized so the sharpest reference (p = 4) keeps its raster skin
  // below the bracket budget: bodies live in radius [1.0, 1.5]
  const double L = 1.55;
  const int cells = opt.cells_2d;
  std::vector<double> plist = {1.5, 2.0, 4.0};
  if (opt.bm_p > 0.0) plist = {opt.bm_p};
  // raster skin is one cell thick, so the admissible bracket scales with h;
  // the quoted budget is 2e-3 at the release resolution of 1024 cells
  const double bracket_budget = 2e-3 * (1024.0 / cells);
  std::vector<ReferenceMeasure2D> refs;
  std::vector<double> aexp;
  for (double p : plist) {
    if (p <= 1.0) throw ConfigError("bm exponent must exceed 1");
    refs.emplace_back(HomogeneousPotential2D::radial(p), -4.0, 4.0, cells);
    aexp.push_back((p - 1.0) / (2.0 * p));
  }
  r.params = {{"pairs", (double)opt.bm_pairs},
              {"cells", (double)cells},
              {"bracket_budget", bracket_budget}};

  const int P = opt.bm_pairs;
  std::vector<CaseResult> cases(P + 1);
  parallel_for(
      (std::size_t)P + 1,
      [&](std::size_t k) {
        StarBody2D k0 =
            k == 0 ? StarBody2D::disc(0.65)
                   : StarBody2D::random(substream(opt.seed, 100 + 2 * k));
        StarBody2D k1 =
            k == 0 ? StarBody2D::disc(1.3)
                   : StarBody2D::random(substream(opt.seed, 101 + 2 * k));
        CaseResult c;
        c.id = k == 0 ? "discs" : "pair" + std::to_string(k);
        NodeRaster ra = rasterize(k0, 1.0, L, cells);
        NodeRaster rb = rasterize(k1, 1.0, L, cells);
        const int np = (int)refs.size();
        std::vector<double> z0(np), z1(np);
        for (int ip = 0; ip < np; ++ip) {
          z0[ip] = std::pow(body_measure(refs[ip], ra), aexp[ip]);
          z1[ip] = std::pow(body_measure(refs[ip], rb), aexp[ip]);
        }
        double min_outer = kInf, min_inner = kInf, max_bracket = 0.0;
        for (int it = 1; it <= 9; ++it) {
          double t = 0.1 * it;
          MinkowskiAverage av = minkowski_average(k0, k1, t, L, cells);
          for (int ip = 0; ip < np; ++ip) {
            double zi = std::pow(body_measure(refs[ip], av.inner), aexp[ip]);
            double zo = std::pow(body_measure(refs[ip], av.outer), aexp[ip]);
            double mix = (1.0 - t) * z0[ip] + t * z1[ip];
            min_outer = std::min(min_outer, zo - mix);
            min_inner = std::min(min_inner, zi - mix);
            max_bracket = std::max(max_bracket, zo - zi);
          }
        }
        c.values = {{"min_outer_margin", min_outer},
                    {"min_inner_margin", min_inner},
                    {"max_bracket", max_bracket}};
        // outer raster must clear the mixture, and for the random pairs the
        // raster bracket must stay inside the budget; the inner margin then
        // sits within one bracket of the truth automatically. The scaled-disc
        // pair spans a 2x radius range, so its bracket is only reported.
        c.margin = k == 0 ? min_outer
                          : std::min(min_outer, bracket_budget - max_bracket);
        cases[k] = std::move(c);
      },
      opt.threads);
  r.cases = std::move(cases);
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_bm_bridge(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "bm-bridge";
  r.claim =
      "on intervals the geometric average dominates the entropic route: "
      "nu(K_t)^a >= e^{-a D(mu_t)} >= (1-t) nu(K_0)^a + t nu(K_1)^a";
  r.tolerance = 1e-3;
  r.expect_hold = true;

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  const double plist[] = {1.5, 2.0, 4.0};
  for (double p : plist) {
    ReferenceMeasure1D nu(HomogeneousPotential1D::radial(p), grid);
    GridDensity1D nu_g = nu.as_grid_density();
    double a = (p - 1.0) / p;
    for (int k = 0; k < 6; ++k) {
      SplitMix64 rng(substream(opt.seed, 700 + k));
      // endpoints on multiples of 8h: every tested t = i/8 then puts the
      // moving interval exactly on cell edges, so the masses are exact
      auto draw = [&] {
        double step = 8.0 * grid.h();
        return std::round(rng.uniform(0.4, 2.0) / step) * step;
      };
      double a0 = draw(), b0 = draw(), a1 = draw(), b1 = draw();
      auto interval_mass = [&](double lo, double hi) {
        double m = 0.0;
        for (int i = 0; i < grid.n; ++i) {
          double x = grid.center(i);
          if (x >= lo && x <= hi) m += nu_g.v[i];
        }
        return m * grid.h();
      };
      auto restrict_interval = [&](double lo, double hi) {
        return GridDensity1D::from_function(grid, [&](double x) {
          return (x >= lo && x <= hi) ? nu.density(x) : 0.0;
        });
      };
      GridDensity1D mu0 = restrict_interval(-a0, b0);
      GridDensity1D mu1 = restrict_interval(-a1, b1);
      Quantile1DMap map = quantile_map(mu0, mu1);
      double z0 = std::pow(interval_mass(-a0, b0), a);
      double z1 = std::pow(interval_mass(-a1, b1), a);
      double geom = kInf, bridge = kInf, entr = kInf;
      for (int it = 1; it <= 7; ++it) {
        double t = it / 8.0;
        double at = (1.0 - t) * a0 + t * a1, bt = (1.0 - t) * b0 + t * b1;
        double zt = std::pow(interval_mass(-at, bt), a);
        double et = std::exp(-a * relative_entropy_along(map, mu0, t, nu));
        double mix = (1.0 - t) * z0 + t * z1;
        geom = std::min(geom, zt - mix);
        bridge = std::min(bridge, zt - et);
        entr = std::min(entr, et - mix);
      }
      CaseResult c;
      c.id = "p" + fmt("%.1f", p) + ":pair" + std::to_string(k);
      c.values = {{"min_geometric_margin", geom},
                  {"min_bridge_margin", bridge},
                  {"min_entropic_margin", entr}};
      c.margin = std::min({geom, bridge, entr});
      r.cases.push_back(std::move(c));
    }
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_variational_entropy(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "variational";
  r.claim =
      "the restriction nu_K minimises D(.||nu) over measures in K, at value "
      "-log nu(K)";
  r.tolerance = 0.0;
  r.expect_hold = true;
  r.params = {{"bodies", (double)opt.variational_bodies},
              {"cells", (double)opt.cells_2d}};

  Grid2D grid{-4.0, 4.0, opt.cells_2d};
  ReferenceMeasure2D ref =
      ReferenceMeasure2D::standard_gaussian(-4.0, 4.0, opt.cells_2d);
  for (int k = 0; k < opt.variational_bodies; ++k) {
    StarBody2D body = k == 0 ? StarBody2D::disc(1.0)
                             : StarBody2D::random(substream(opt.seed, 500 + k));
    auto inside = [&](double x, double y) { return body.contains(x, y); };
    GridDensity2D muk = restrict_to(ref, grid, inside);
    double d = relative_entropy(muk, ref);
    double mass = 0.0;
    double h2 = grid.h() * grid.h();
    for (int iy = 0; iy < grid.n; ++iy)
      for (int ix = 0; ix < grid.n; ++ix)
        if (inside(grid.coord(ix), grid.coord(iy)))
          mass += ref.density(Vec2(grid.coord(ix), grid.coord(iy))) * h2;
    double identity = std::abs(d + std::log(mass));

    SplitMix64 rng(substream(opt.seed, 600 + k));
    double ph = rng.uniform(0.0, 6.28), tilt = rng.uniform(0.25, 0.5);
    GridDensity2D wavy(grid, [&] {
      std::vector<double> v = muk.v;
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          v[(std::size_t)iy * grid.n + ix] *=
              1.0 + 0.5 * std::sin(3.0 * grid.coord(ix) + ph) *
                        std::cos(2.0 * grid.coord(iy) - ph);
      return v;
    }());
    GridDensity2D tilted(grid, [&] {
      std::vector<double> v = muk.v;
      for (int iy = 0; iy < grid.n; ++iy)
        for (int ix = 0; ix < grid.n; ++ix)
          v[(std::size_t)iy * grid.n + ix] *= std::exp(tilt * grid.coord(ix));
      return v;
    }());
    double gap1 = relative_entropy(wavy, ref) - d;
    double gap2 = relative_entropy(tilted, ref) - d;

    CaseResult c;
    c.id = k == 0 ? "disc" : "body" + std::to_string(k);
    c.values = {{"D", d},
                {"log_mass", std::log(mass)},
                {"identity_error", identity},
                {"competitor_gap_wavy", gap1},
                {"competitor_gap_tilt", gap2}};
    c.margin = std::min({1e-4 - identity, gap1 - 1e-4, gap2 - 1e-4});
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

VerificationResult check_gamma2_family(const VerifyOptions& opt) {
  StopWatch sw;
  VerificationResult r;
  r.suite = "gamma2";
  r.claim =
      "int Gamma2(u) dmu >= 2 int Gamma(u) dmu + (int Lu dmu)^2 / n for even "
      "u and even strongly log-concave mu";
  r.tolerance = 1e-3;
  r.expect_hold = true;
  r.params = {{"cells", (double)opt.cells_1d}};

  Grid1D grid = gaussian_grid(1.0, opt.cells_1d);
  GridDensity1D gamma = GridDensity1D::gaussian(grid, 0.0, 1.0);
  std::vector<LabeledDensity> measures;
  measures.push_back({"gauss", gamma});
  measures.push_back({"trunc:1",
                      GridDensity1D::truncated_gaussian(grid, -1.0, 1.0)});
  measures.push_back({"var:0.5", GridDensity1D::gaussian(grid, 0.0, 0.5)});

  struct Test {
    std::string id;
    GridFunction u;
  };
  std::vector<Test> tests;
  auto add = [&](const std::string& id, std::function<double(double)> f) {
    tests.push_back({id, GridFunction::from_function(grid, f)});
  };
  add("x^2/2", [](double x) { return 0.5 * x * x; });
  add("x^4/12", [](double x) { return x * x * x * x / 12.0; });
  add("cos", [](double x) { return std::cos(x); });
  add("cos2-damped",
      [](double x) { return std::cos(2.0 * x) * std::exp(-x * x / 8.0); });
  add("x^2-damped",
      [](double x) { return x * x * std::exp(-x * x / 4.0); });
  add("double-well", [](double x) {
    double d = x * x - 1.0;
    return d * d / 8.0;
  });
  add("cosh-half", [](double x) { return std::cosh(0.5 * x); });
  add("cauchy", [](double x) { return 1.0 / (1.0 + x * x); });
  add("hermite4", [](double x) { return x * x * x * x - 6.0 * x * x; });
  add("log1p-sq", [](double x) { return std::log(1.0 + x * x); });

  for (const auto& m : measures) {
    SnMembership cert = s_n_membership(m.mu);
    for (const auto& t : tests) {
      CaseResult c;
      c.id = t.id + "|" + m.id;
      c.margin = gamma2_inequality_margin(t.u, m.mu, 1);
      c.values = {{"margin", c.margin},
                  {"odd_poincare", cert.odd_poincare_estimate}};
      if (!cert.not_falsified) c.caveat = "membership certificate failed";
      r.cases.push_back(std::move(c));
    }
  }
  {
    // the quadratic against its own invariant measure is the equality case
    CaseResult c;
    c.id = "equality:x^2/2|gauss";
    double m = gamma2_inequality_margin(tests[0].u, gamma, 1);
    c.values = {{"margin", m}};
    c.margin = 1e-6 - std::abs(m);
    r.cases.push_back(std::move(c));
  }

  const std::pair<int, int> ibp_pairs[] = {{1, 2}, {0, 6}, {7, 8}, {3, 4}};
  for (auto [i, j] : ibp_pairs) {
    CaseResult c;
    c.id = "ibp:" + tests[i].id + "," + tests[j].id;
    double resid = ibp_residual(tests[i].u, tests[j].u, gamma);
    c.values = {{"residual", resid}};
    c.margin = 1e-3 - resid;
    r.cases.push_back(std::move(c));
  }
  {
    GridFunction fx = GridFunction::from_function(grid, [](double x) { return x; });
    GridFunction fx3 = GridFunction::from_function(grid, [](double x) {
      return x * x * x;
    });
    CaseResult c;
    c.id = "ibp:x,x^3";
    double resid = ibp_residual(fx, fx3, gamma);
    c.values = {{"residual", resid}};
    c.margin = 1e-3 - resid;
    r.cases.push_back(std::move(c));
  }
  for (int i : {0, 2, 4, 8}) {
    CaseResult c;
    c.id = "bochner:" + tests[i].id;
    double resid = bochner_residual(tests[i].u, gamma);
    c.values = {{"residual", resid}};
    c.margin = 1e-2 - resid;
    r.cases.push_back(std::move(c));
  }
  r.finish();
  r.seconds = sw.seconds();
  return r;
}

std::vector<std::string> suite_names() {
  return {"lsi",    "talagrand", "hwi",    "sharpness", "ou-decay", "cd0n",
          "concavity", "conv2n", "bm",     "gamma2",    "variational"};
}

std::vector<VerificationResult> run_suite(const std::string& name,
                                          const VerifyOptions& opt) {
  std::vector<VerificationResult> out;
  auto is = [&](const char* s) { return name == s; };
  if (is("lsi")) {
    out.push_back(check_lsi(opt));
    out.push_back(check_lsi_counterexample(opt));
  } else if (is("talagrand")) {
    out.push_back(check_talagrand(opt));
    out.push_back(check_talagrand_counterexample(opt));
  } else if (is("hwi")) {
    out.push_back(check_hwi(opt));
  } else if (is("sharpness")) {
    out.push_back(check_sharpness_limits(opt));
  } else if (is("ou-decay")) {
    out.push_back(check_ou_decay(opt));
  } else if (is("cd0n")) {
    out.push_back(check_entropic_cd0n(opt));
  } else if (is("concavity")) {
    out.push_back(check_displacement_concavity(opt));
    out.push_back(check_concavity_counterexample(opt));
  } else if (is("conv2n")) {
    out.push_back(check_2n_convexity_global(opt));
  } else if (is("bm")) {
    out.push_back(check_bm_star_bodies(opt));
    out.push_back(check_bm_bridge(opt));
  } else if (is("gamma2")) {
    out.push_back(check_gamma2_family(opt));
  } else if (is("variational")) {
    out.push_back(check_variational_entropy(opt));
  } else if (is("all")) {
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, opt);
      out.insert(out.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
  } else {
    throw ConfigError("unknown suite: " + name);
  }
  return out;
}

}  // namespace otlab
