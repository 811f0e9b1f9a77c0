#pragma once

#include <Eigen/Dense>

#include "otlab/common.hpp"

namespace otlab {

// N(mean, cov) in dimension n; cov symmetric positive definite
struct GaussianMeasure {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  GaussianMeasure(Eigen::VectorXd m, Eigen::MatrixXd c);
  static GaussianMeasure standard(int n);
  static GaussianMeasure iso(int n, double var);
  static GaussianMeasure scalar(double mean, double var);

  int dim() const { return (int)mean.size(); }
  double moment2() const { return mean.squaredNorm() + cov.trace(); }
  bool is_even(double tol = 1e-12) const { return mean.norm() <= tol; }

  double entropy() const;                 // (n/2) log(2 pi e) + (1/2) log det cov
  double relative_entropy_std() const;    // D(. || standard gaussian)
  double fisher_information_std() const;  // I(. || standard gaussian)
  double density(const Eigen::VectorXd& x) const;
};

// symmetric PSD square root
Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& a);

// optimal map x -> A x + b pushing g0 to g1; A cov0 A = cov1
struct GaussianMap {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return A * x + b; }
};

GaussianMap gaussian_map(const GaussianMeasure& g0, const GaussianMeasure& g1);
double w2_gaussian(const GaussianMeasure& g0, const GaussianMeasure& g1);
// displacement interpolant at time t, again Gaussian
GaussianMeasure gaussian_interpolate(const GaussianMeasure& g0,
                                     const GaussianMeasure& g1, double t);
// Ornstein-Uhlenbeck flow toward the standard Gaussian
GaussianMeasure gaussian_ou_evolve(const GaussianMeasure& g, double t);

}  // namespace otlab
