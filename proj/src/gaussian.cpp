#include "otlab/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace otlab {

GaussianMeasure::GaussianMeasure(Eigen::VectorXd m, Eigen::MatrixXd c)
    : mean(std::move(m)), cov(std::move(c)) {
  if (cov.rows() != cov.cols() || cov.rows() != mean.size())
    throw GridMismatchError("gaussian mean/cov dimensions disagree");
  if ((cov - cov.transpose()).norm() > 1e-12 * (1.0 + cov.norm()))
    throw UnsupportedError("covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw UnsupportedError("covariance must be positive definite");
}

GaussianMeasure GaussianMeasure::standard(int n) {
  return {Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n)};
}

GaussianMeasure GaussianMeasure::iso(int n, double var) {
  return {Eigen::VectorXd::Zero(n), var * Eigen::MatrixXd::Identity(n, n)};
}

GaussianMeasure GaussianMeasure::scalar(double mean, double var) {
  Eigen::VectorXd m(1);
  m << mean;
  Eigen::MatrixXd c(1, 1);
  c << var;
  return {m, c};
}

double GaussianMeasure::entropy() const {
  int n = dim();
  double logdet = std::log(cov.determinant());
  return 0.5 * n * std::log(2.0 * std::numbers::pi * std::numbers::e) +
         0.5 * logdet;
}

double GaussianMeasure::relative_entropy_std() const {
  int n = dim();
  double logdet = std::log(cov.determinant());
  return 0.5 * (mean.squaredNorm() + cov.trace() - n - logdet);
}

double GaussianMeasure::fisher_information_std() const {
  // grad log(dmu/dgamma) = x - cov^{-1}(x - mean); integrate the square
  int n = dim();
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd S = cov.inverse();
  Eigen::MatrixXd M = I - S;  // acting on centered x
  double quad = (M * cov * M.transpose()).trace();
  return quad + mean.squaredNorm();
}

double GaussianMeasure::density(const Eigen::VectorXd& x) const {
  int n = dim();
  Eigen::VectorXd d = x - mean;
  double q = d.dot(cov.llt().solve(d));
  double norm = std::pow(2.0 * std::numbers::pi, -0.5 * n) /
                std::sqrt(cov.determinant());
  return norm * std::exp(-0.5 * q);
}

Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

GaussianMap gaussian_map(const GaussianMeasure& g0, const GaussianMeasure& g1) {
  if (g0.dim() != g1.dim()) throw GridMismatchError("gaussian dims disagree");
  Eigen::MatrixXd r0 = sqrtm_spd(g0.cov);
  Eigen::MatrixXd r0inv = r0.inverse();
  Eigen::MatrixXd mid = sqrtm_spd(r0 * g1.cov * r0);
  GaussianMap map;
  map.A = r0inv * mid * r0inv;
  map.b = g1.mean - map.A * g0.mean;
  return map;
}

double w2_gaussian(const GaussianMeasure& g0, const GaussianMeasure& g1) {
  Eigen::MatrixXd r0 = sqrtm_spd(g0.cov);
  double cross = sqrtm_spd(r0 * g1.cov * r0).trace();
  double d2 = (g0.mean - g1.mean).squaredNorm() + g0.cov.trace() +
              g1.cov.trace() - 2.0 * cross;
  return std::sqrt(std::max(0.0, d2));
}

GaussianMeasure gaussian_interpolate(const GaussianMeasure& g0,
                                     const GaussianMeasure& g1, double t) {
  GaussianMap map = gaussian_map(g0, g1);
  int n = g0.dim();
  Eigen::MatrixXd At =
      (1.0 - t) * Eigen::MatrixXd::Identity(n, n) + t * map.A;
  return {(1.0 - t) * g0.mean + t * g1.mean, At * g0.cov * At.transpose()};
}

GaussianMeasure gaussian_ou_evolve(const GaussianMeasure& g, double t) {
  int n = g.dim();
  double e = std::exp(-t);
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  return {e * g.mean, I + e * e * (g.cov - I)};
}

}  // namespace otlab
