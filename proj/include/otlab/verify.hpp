#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "otlab/functionals.hpp"
#include "otlab/grid1d.hpp"
#include "otlab/ou.hpp"
#include "otlab/potential.hpp"
#include "otlab/star_body.hpp"

namespace otlab {

// One verified instance of a claim.  margin >= 0 means the inequality held
// with room to spare; the suite tolerance decides how negative is still
// acceptable as discretisation noise.  Auxiliary quantities (the two sides,
// distances, entropies) go into values so reports can show the full picture.
struct CaseResult {
  std::string id;
  double margin = 0.0;
  std::map<std::string, double> values;
  std::string caveat;  // nonempty when the case was degraded or skipped
};

struct VerificationResult {
  std::string suite;
  std::string claim;        // human-readable statement of what is checked
  bool expect_hold = true;  // counterexample suites expect a violation
  double tolerance = 1e-3;
  std::vector<CaseResult> cases;
  std::map<std::string, double> params;
  double min_margin = 0.0;
  std::string worst_case;
  bool holds = false;
  bool matches_expectation = false;
  double seconds = 0.0;

  // fills min_margin/worst_case/holds/matches_expectation from cases
  void finish();
};

struct VerifyOptions {
  int cells_1d = 4096;
  int cells_2d = 1024;
  int time_points = 33;
  std::uint64_t seed = 717;
  int bm_pairs = 100;
  double bm_p = 0.0;  // restrict the bm sweep to one exponent; 0 = all
  int concavity_pairs = 20;
  int cd0n_pairs = 20;
  int variational_bodies = 10;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct LabeledDensity {
  std::string id;
  GridDensity1D mu;
};

// 25 even strongly log-concave test measures on the given grid: scaled
// Gaussians, truncated-then-smoothed Gaussians, and Gaussians damped by even
// convex potentials.  Deterministic; ids are stable across runs.
std::vector<LabeledDensity> even_slc_family(const Grid1D& grid);

// seeded pair of absolutely continuous 1-D measures from mixed families
// (Gaussian / uniform / truncated Gaussian / quartic-damped)
std::pair<LabeledDensity, LabeledDensity> random_pair_1d(const Grid1D& grid,
                                                         std::uint64_t seed);

// dimensional log-Sobolev chain 4 D <= 2 n (e^{2D/n} - 1) <= I
VerificationResult check_lsi(const VerifyOptions& opt);
// the same chain on scaled Gaussians with s > 1, where it must break
VerificationResult check_lsi_counterexample(const VerifyOptions& opt);

// dimensional Talagrand chain W2^2 <= -n log cos(sqrt(2/n) W2) <= D
VerificationResult check_talagrand(const VerifyOptions& opt);
// scaled Gaussian s = 2: middle term exceeds D
VerificationResult check_talagrand_counterexample(const VerifyOptions& opt);

// dimensional HWI in both orientations on Gaussian-family cases
VerificationResult check_hwi(const VerifyOptions& opt);

// e^{D/n} ratio chains approach 1 as the Gaussian scale tends to 1
VerificationResult check_sharpness_limits(const VerifyOptions& opt);

// relative entropy decays like e^{-4t} along the flow toward the Gaussian
// for even strongly log-concave data; plus semigroup composition and the
// entropy-production identity d/dt D = -I
VerificationResult check_ou_decay(const VerifyOptions& opt);

// exp(h/n) is concave along quantile geodesics; Gaussian case is affine
VerificationResult check_entropic_cd0n(const VerifyOptions& opt);

// exp(-a D) with a = (p-1)/(p n) is concave along geodesics between
// radially decreasing measures
VerificationResult check_displacement_concavity(const VerifyOptions& opt);
// exponent 1/n between N(0,1) and N(0,4): concavity must fail
VerificationResult check_concavity_counterexample(const VerifyOptions& opt);

// global trigonometric two-point bound on e^{-D/n} along geodesics
VerificationResult check_2n_convexity_global(const VerifyOptions& opt);

// dimensional Brunn-Minkowski for homogeneous measures on star bodies,
// verified between inner and outer rasters of the Minkowski average
VerificationResult check_bm_star_bodies(const VerifyOptions& opt);
// 1-D interval route: geometric and entropic sides computed independently
VerificationResult check_bm_bridge(const VerifyOptions& opt);

// restriction of nu to a star body minimises D(.||nu) at value -log nu(K)
VerificationResult check_variational_entropy(const VerifyOptions& opt);

// integration by parts, the curvature identity for the one-dimensional
// Gaussian generator, and the dimensional Gamma_2 bound on even test
// functions against even reference measures
VerificationResult check_gamma2_family(const VerifyOptions& opt);

// suite names: lsi, talagrand, hwi, sharpness, ou-decay, cd0n, concavity,
// conv2n, bm, gamma2, variational, all
std::vector<VerificationResult> run_suite(const std::string& name,
                                          const VerifyOptions& opt);
std::vector<std::string> suite_names();

}  // namespace otlab
