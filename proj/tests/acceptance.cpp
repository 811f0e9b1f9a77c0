// Acceptance gate: every release-blocking claim gets one pass/fail line.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "otlab/report.hpp"
#include "otlab/verify.hpp"

using namespace otlab;

namespace {

struct Gate {
  int failures = 0;

  void line(int number, bool pass, const std::string& what,
            const std::string& detail) {
    std::printf("criterion %2d: %s  %-46s %s\n", number,
                pass ? "PASS" : "FAIL", what.c_str(), detail.c_str());
    if (!pass) ++failures;
  }
};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

const CaseResult* find_case(const VerificationResult& r,
                            const std::string& id) {
  for (const auto& c : r.cases)
    if (c.id == id) return &c;
  return nullptr;
}

// 1: closed-form Gaussian family at 4096 cells, 1e-4 relative, < 1 s per scale
void criterion_closed_forms(Gate& g) {
  double worst_rel = 0.0, worst_sec = 0.0;
  for (const auto& k : oracle::kGaussFamily) {
    auto t0 = std::chrono::steady_clock::now();
    Grid1D grid = gaussian_grid(k.s, 4096);
    ReferenceMeasure1D ref = ReferenceMeasure1D::standard_gaussian(grid);
    GridDensity1D mu = GridDensity1D::gaussian(grid, 0.0, k.s * k.s);
    GridDensity1D ga = GridDensity1D::gaussian(grid, 0.0, 1.0);
    double d = relative_entropy(mu, ref);
    double i = fisher_information(mu, ref);
    double w = w2_1d(mu, ga);
    worst_sec = std::max(worst_sec, seconds_since(t0));
    worst_rel = std::max({worst_rel, std::abs(d - k.d) / k.d,
                          std::abs(i - k.i) / k.i, std::abs(w - k.w2) / k.w2});
  }
  g.line(1, worst_rel < 1e-4 && worst_sec < 1.0,
         "gaussian scaling family closed forms",
         "max rel err " + fmt("%.2e", worst_rel) + ", slowest scale " +
             fmt("%.3f", worst_sec) + " s");
}

// 2: log-Sobolev chain on the 25-member family; breaks at scales 2 and 10
void criterion_lsi(Gate& g, const VerifyOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto held = check_lsi(opt);
  auto broken = check_lsi_counterexample(opt);
  double sec = seconds_since(t0);
  bool family_ok = held.holds && held.matches_expectation &&
                   held.cases.size() == 25 && held.min_margin >= -1e-3;
  bool counter_ok = !broken.holds && broken.matches_expectation &&
                    broken.cases.size() == 2;
  for (const auto& c : broken.cases) counter_ok = counter_ok && c.margin < 0.0;
  g.line(2, family_ok && counter_ok && sec < 30.0,
         "log-sobolev chain 4D <= 2n(e^{2D/n}-1) <= I",
         "family min margin " + fmt("%+.2e", held.min_margin) +
             ", breaks at scales 2 and 10, " + fmt("%.1f", sec) + " s");
}

// 3: Talagrand chain; at scale 2 the middle term exceeds D
void criterion_talagrand(Gate& g, const VerifyOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto held = check_talagrand(opt);
  auto broken = check_talagrand_counterexample(opt);
  double sec = seconds_since(t0);
  bool family_ok = held.holds && held.cases.size() == 25 &&
                   held.min_margin >= -1e-3;
  bool counter_ok = !broken.holds && broken.matches_expectation;
  double mid = 0.0, d = 0.0;
  if (!broken.cases.empty()) {
    mid = broken.cases[0].values.at("middle");
    d = broken.cases[0].values.at("D");
    counter_ok = counter_ok && std::abs(mid - oracle::kTalagrandMidScale2) <
                                   2e-3 &&
                 std::abs(d - 0.80685281944005469) < 2e-3 && mid > d;
  }
  g.line(3, family_ok && counter_ok && sec < 30.0,
         "talagrand chain W2^2 <= -n log cos(...) <= D",
         "scale 2 middle " + fmt("%.3f", mid) + " > D " + fmt("%.3f", d) +
             ", " + fmt("%.1f", sec) + " s");
}

// 4: HWI in both orientations plus sharpness of the whole chain near scale 1
void criterion_hwi(Gate& g, const VerifyOptions& opt) {
  auto hwi = check_hwi(opt);
  auto sharp = check_sharpness_limits(opt);
  bool fwd = false, rev = false;
  for (const auto& c : hwi.cases) {
    if (c.id.rfind("fwd", 0) == 0) fwd = true;
    if (c.id.rfind("rev", 0) == 0) rev = true;
  }
  const CaseResult* finest = find_case(sharp, "scale:0.999");
  double dev = finest ? finest->values.at("max_deviation") : 1.0;
  bool ok = hwi.holds && hwi.min_margin >= -1e-3 && fwd && rev &&
            sharp.holds && finest && dev < 1e-3;
  g.line(4, ok, "dimensional HWI and chain sharpness",
         "hwi min margin " + fmt("%+.2e", hwi.min_margin) +
             ", ratio deviation at scale 0.999 " + fmt("%.1e", dev));
}

// 5: star-body brunn-minkowski sweep, brackets under 2e-3 at 1024^2, < 10 min
void criterion_bm(Gate& g, const VerifyOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto r = check_bm_star_bodies(opt);
  double sec = seconds_since(t0);
  int pairs = 0;
  bool ok = r.holds && r.matches_expectation;
  double worst_bracket = 0.0;
  for (const auto& c : r.cases) {
    ok = ok && c.values.at("min_outer_margin") >= 0.0;
    ok = ok && c.values.at("min_inner_margin") >=
                   -c.values.at("max_bracket") - 1e-12;
    if (c.id == "discs") continue;
    ++pairs;
    worst_bracket = std::max(worst_bracket, c.values.at("max_bracket"));
  }
  ok = ok && pairs == 100 && worst_bracket < 2e-3 && sec < 600.0;
  g.line(5, ok, "star-body brunn-minkowski, 100 random pairs",
         "dilation margins >= 0, worst bracket " + fmt("%.2e", worst_bracket) +
             ", " + fmt("%.0f", sec) + " s");
}

// 6: displacement concavity of e^{-D/(2n)}, and its failure at exponent 1/n
void criterion_concavity(Gate& g, const VerifyOptions& opt) {
  auto held = check_displacement_concavity(opt);
  auto broken = check_concavity_counterexample(opt);
  bool ok = held.holds && held.matches_expectation &&
            (int)held.cases.size() == opt.concavity_pairs;
  double bump = broken.cases.empty()
                    ? 0.0
                    : broken.cases[0].values.at("max_second_diff");
  ok = ok && !broken.holds && broken.matches_expectation && bump > 1e-3;
  g.line(6, ok, "displacement concavity of exp(-D/(2n))",
         "20 radially decreasing pairs concave; growing gaussians convex by " +
             fmt("%.1e", bump));
}

// 7: entropic curvature-dimension: exp(h/n) concave, affine gaussian anchors
void criterion_cd0n(Gate& g, const VerifyOptions& opt) {
  auto r = check_entropic_cd0n(opt);
  const CaseResult* anchor = find_case(r, "gauss-affine");
  bool ok = r.holds && r.matches_expectation && anchor &&
            anchor->values.at("max_second_diff") < 1e-4;
  int pairs = 0;
  for (const auto& c : r.cases)
    if (c.id.rfind("pair", 0) == 0) ++pairs;
  ok = ok && pairs == opt.cd0n_pairs;
  g.line(7, ok, "entropic concavity of exp(h/n)",
         "gaussian anchor second differences " +
             fmt("%.1e", anchor ? anchor->values.at("max_second_diff") : 1.0));
}

// 8: gamma calculus: integration by parts, bochner, and the dimensional
//    gamma-two inequality with its exact equality case
void criterion_gamma2(Gate& g, const VerifyOptions& opt) {
  auto r = check_gamma2_family(opt);
  bool ok = r.holds && r.matches_expectation;
  double worst_ibp = 0.0, worst_bochner = 0.0, eq = 1.0;
  int ineq = 0;
  for (const auto& c : r.cases) {
    if (c.id.rfind("ibp:", 0) == 0) {
      worst_ibp = std::max(worst_ibp, c.values.at("residual"));
    } else if (c.id.rfind("bochner:", 0) == 0) {
      worst_bochner = std::max(worst_bochner, c.values.at("residual"));
    } else if (c.id.rfind("equality:", 0) == 0) {
      eq = std::abs(c.values.at("margin"));
    } else {
      ok = ok && c.margin >= -1e-3;
      ++ineq;
    }
  }
  ok = ok && worst_ibp < 1e-3 && worst_bochner < 1e-2 && eq < 1e-6 &&
       ineq >= 30;
  g.line(8, ok, "gamma calculus and gamma-two inequality",
         "ibp " + fmt("%.1e", worst_ibp) + ", bochner " +
             fmt("%.1e", worst_bochner) + ", equality case " + fmt("%.1e", eq));
}

// 9: improved decay along the flow toward the gaussian, with semigroup and
//    entropy-production controls
void criterion_ou(Gate& g, const VerifyOptions& opt) {
  auto r = check_ou_decay(opt);
  bool ok = r.holds && r.matches_expectation && r.min_margin >= -1e-3;
  bool saw_decay = false, saw_compose = false, saw_production = false;
  for (const auto& c : r.cases) {
    if (c.id.find("@t=") != std::string::npos) saw_decay = true;
    if (c.id.find("@compose") != std::string::npos) {
      saw_compose = true;
      ok = ok && c.values.at("tv") < 1e-4;
    }
    if (c.id.find("@production") != std::string::npos) {
      saw_production = true;
      ok = ok && c.values.at("relative_error") < 5e-2;
    }
  }
  ok = ok && saw_decay && saw_compose && saw_production;
  g.line(9, ok, "e^{-4t} entropy decay along the gaussian flow",
         "min margin " + fmt("%+.2e", r.min_margin));
}

// 10: restriction to a star body minimises the relative entropy at
//     -log nu(K); perturbed competitors pay strictly more
void criterion_variational(Gate& g, const VerifyOptions& opt) {
  auto r = check_variational_entropy(opt);
  bool ok = r.holds && r.matches_expectation &&
            (int)r.cases.size() == opt.variational_bodies;
  double worst_identity = 0.0;
  for (const auto& c : r.cases) {
    worst_identity = std::max(worst_identity, c.values.at("identity_error"));
    ok = ok && c.values.at("identity_error") <= 1e-4 &&
         c.values.at("competitor_gap_wavy") > 0.0 &&
         c.values.at("competitor_gap_tilt") > 0.0;
  }
  g.line(10, ok, "restricted measure minimises relative entropy",
         "worst |D + log nu(K)| = " + fmt("%.1e", worst_identity));
}

}  // namespace

int main() {
  VerifyOptions opt;  // release defaults: 4096 / 1024^2 / 100 pairs
  opt.threads = 1;

  Gate g;
  criterion_closed_forms(g);
  criterion_lsi(g, opt);
  criterion_talagrand(g, opt);
  criterion_hwi(g, opt);
  criterion_bm(g, opt);
  criterion_concavity(g, opt);
  criterion_cd0n(g, opt);
  criterion_gamma2(g, opt);
  criterion_ou(g, opt);
  criterion_variational(g, opt);

  if (g.failures == 0) {
    std::printf("all criteria satisfied\n");
  } else {
    std::printf("%d criteria failed\n", g.failures);
  }
  return g.failures;
}
