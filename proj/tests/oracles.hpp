#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

// Reference values for the tests, computed independently of the library:
// closed forms evaluated in extended precision, plus two tiny combinatorial
// transport oracles.  Nothing in here calls library code.
namespace oracle {

inline constexpr double kGaussEntropy = 1.4189385332046727;  // log(2 pi e)/2

// standard normal conditioned on [-1, 1]
inline constexpr double kTruncMass1 = 0.68268949213708585;     // P(|Z| <= 1)
inline constexpr double kTruncNegLogMass1 = 0.38171514630212607;
inline constexpr double kTruncEntropy1 = 0.68278593428894328;

// N(0, s^2) against the standard Gaussian
struct GaussCase {
  double s, d, i, w2;
};
inline constexpr GaussCase kGaussFamily[] = {
    {0.25, 0.91754436111989062, 14.0625, 0.75},
    {0.5, 0.31814718055994531, 2.25, 0.5},
    {0.9, 0.010360515657826301, 0.044567901234567901, 0.1},
    {1.1, 0.0096898201956751400, 0.036446280991735537, 0.1},
    {2.0, 0.80685281944005469, 2.25, 1.0},
    {10.0, 47.197414907005954, 98.01, 9.0},
};

// general Gaussian pair N(0.3, 1.5^2) against the standard Gaussian
inline constexpr double kShiftedD = 0.26453489189183562;
inline constexpr double kShiftedI = 0.78444444444444444;
inline constexpr double kShiftedW2 = 0.70710678118654752;  // to N(-0.2, 1)

// dimensional chain midpoints at scale 2 (n = 1)
inline constexpr double kTalagrandMidScale2 = 1.8582602678750567;
inline constexpr double kLsiMidScale2 = 8.0427684615938339;

inline constexpr double kW2UnifGrow = 0.57735026918962576;  // [0,1] to [0,2]

// planar standard Gaussian mass of the centred disc of radius r
inline double gauss_disc_mass(double r) { return 1.0 - std::exp(-r * r / 2); }

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// average squared displacement of the best equal-weight matching, by brute
// force over all permutations; n! cost, keep n <= 8
inline double assignment_cost(std::vector<double> x, std::vector<double> y) {
  std::vector<std::size_t> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  double best = 1e300;
  do {
    double cost = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      double d = x[k] - y[idx[k]];
      cost += d * d;
    }
    best = std::min(best, cost);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best / double(x.size());
}

// the monotone matching; optimal in one dimension for convex costs
inline double sorted_matching_cost(std::vector<double> x,
                                   std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double cost = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double d = x[k] - y[k];
    cost += d * d;
  }
  return cost / double(x.size());
}

}  // namespace oracle
