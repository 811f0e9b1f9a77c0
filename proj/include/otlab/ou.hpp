#pragma once

#include <vector>

#include "otlab/functionals.hpp"

namespace otlab {

// scalar function tabulated on a grid; derivatives are central differences
// with one-sided second-order stencils at the ends
struct GridFunction {
  Grid1D grid;
  std::vector<double> v;

  GridFunction() = default;
  GridFunction(Grid1D g, std::vector<double> values);
  static GridFunction from_function(const Grid1D& g,
                                    const std::function<double(double)>& f);
  GridFunction d1() const;
  GridFunction d2() const;
  bool is_even(double tol = 1e-9) const;
};

// Ornstein-Uhlenbeck generator L u = u'' - x u'
GridFunction ou_generator(const GridFunction& u);
GridFunction gamma_carre(const GridFunction& u);             // (u')^2
GridFunction gamma_carre(const GridFunction& f, const GridFunction& g);
GridFunction gamma2(const GridFunction& u);                  // (u'')^2 + (u')^2

double integrate(const GridFunction& f, const GridDensity1D& mu);

// |int Gamma(f,g) dgamma + int f Lg dgamma| / scale
double ibp_residual(const GridFunction& f, const GridFunction& g,
                    const GridDensity1D& gamma_density);
// int |Gamma2(f) - (L Gamma(f)/2 - Gamma(f, Lf))| dgamma / scale
double bochner_residual(const GridFunction& f,
                        const GridDensity1D& gamma_density);

// int Gamma2(u) dmu - 2 int Gamma(u) dmu - (1/n) (int Lu dmu)^2; u even
double gamma2_inequality_margin(const GridFunction& u, const GridDensity1D& mu,
                                int n_dim = 1);

struct SnMembership {
  double odd_poincare_estimate = 0.0;  // Rayleigh maximum over the basis
  bool not_falsified = false;          // estimate <= 1 + tol
  std::vector<double> witness;         // basis coefficients of the maximizer
};

// lower bound on the odd-function Poincare constant via a Rayleigh quotient
// over odd Hermite polynomials (degree <= 11) and odd trigonometric modes
SnMembership s_n_membership(const GridDensity1D& mu, double tol = 1e-3);

// law of e^{-t} X + sqrt(1 - e^{-2t}) G, G standard normal: the
// Ornstein-Uhlenbeck evolution toward the standard Gaussian
GridDensity1D ou_evolve(const GridDensity1D& mu, double t);

// trigonometric coefficients of the dimensional convexity defect
struct CoefficientSet {
  int n = 1;
  double theta_max() const;      // sqrt(n/2) pi
  double s(double theta) const;  // sqrt(n/2) sin(sqrt(2/n) theta)
  double c(double theta) const;  // cos(sqrt(2/n) theta)
  // s(t theta)/s(theta); +inf at or beyond theta_max; -> t as theta -> 0
  double sigma(double t, double theta) const;
};

struct EntropyDerivatives {
  std::vector<double> t;
  std::vector<double> d1;  // - int L theta_t dmu_t
  std::vector<double> d2;  // int Gamma2(theta_t) dmu_t
};

// derivatives of D(mu_t || standard gaussian) along a quantile geodesic
EntropyDerivatives entropy_derivatives_along(const Quantile1DMap& map,
                                             const GridDensity1D& mu0,
                                             const std::vector<double>& t_grid);

}  // namespace otlab
