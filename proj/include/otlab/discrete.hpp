#pragma once

#include <vector>

#include "otlab/common.hpp"

namespace otlab {

// weighted point cloud in R^d, weights normalized to 1
struct DiscreteMeasure {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;

  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<std::vector<double>> pts,
                  std::vector<double> w);
  int size() const { return (int)points.size(); }
  int dim() const { return points.empty() ? 0 : (int)points[0].size(); }
  double moment2() const;
};

struct DiscreteCoupling {
  int rows = 0, cols = 0;
  std::vector<double> pi;  // row-major plan
  double cost = 0.0;       // sum pi_ij |x_i - y_j|^2
  int iterations = 0;
  double marginal_error = 0.0;

  double at(int i, int j) const { return pi[i * cols + j]; }
};

// entropic plan at regularization eps, log-domain iterations;
// throws NoConvergence when the marginal error stays above tol
DiscreteCoupling sinkhorn(const DiscreteMeasure& mu0,
                          const DiscreteMeasure& mu1, double eps,
                          int max_iter = 20000, double tol = 1e-9);

// exact squared-distance transport by the transportation simplex
// (sizes up to 64 x 64)
DiscreteCoupling exact_coupling(const DiscreteMeasure& mu0,
                                const DiscreteMeasure& mu1);

double cost_matrix_entry(const DiscreteMeasure& a, const DiscreteMeasure& b,
                         int i, int j);

}  // namespace otlab
