#pragma once

#include <optional>
#include <string>

#include "otlab/potential.hpp"
#include "otlab/transport.hpp"

namespace otlab {

double entropy(const GridDensity1D& mu);  // -int rho log rho

// int f log f dnu with f = dmu/dnu; +inf when mu leaks outside supp(nu)
double relative_entropy(const GridDensity1D& mu, const ReferenceMeasure1D& nu);
double relative_entropy(const GridDensity1D& mu, const GridDensity1D& nu);

struct FisherDiagnostics {
  bool boundary_jump = false;        // density jump at a support edge
  bool disconnected_support = false;
};

// int |grad log(dmu/dnu)|^2 dmu; +inf sentinel (flagged, not thrown) when
// the density jumps at a support edge or the support has holes
double fisher_information(const GridDensity1D& mu, const ReferenceMeasure1D& nu,
                          FisherDiagnostics* diag = nullptr);

double potential_energy(const GridDensity1D& mu,
                        const HomogeneousPotential1D& V);
// int <grad V, x> dmu; equals p * potential_energy for p-homogeneous V
double euler_energy(const GridDensity1D& mu, const HomogeneousPotential1D& V);

// int f^{1-1/n} dx; at n = 1 this is the support measure
double renyi_A(const GridDensity1D& mu, int n_dim = 1);

struct RadialMonotonicity {
  bool holds = false;
  double max_violation = 0.0;  // relative to the ratio maximum
};
// dmu/dnu nonincreasing away from the origin along both rays; measures with
// this property sit inside the displacement class (euler_energy <= n)
RadialMonotonicity radial_monotonicity_check(const GridDensity1D& mu,
                                             const ReferenceMeasure1D& nu,
                                             double tol = 1e-9);

struct FunctionalReport {
  double entropy = 0.0;
  double relative_entropy = 0.0;
  double fisher = 0.0;
  double potential_energy = 0.0;
  double euler_energy = 0.0;
  double moment2 = 0.0;
  double renyi = 0.0;
  bool in_displacement_class = false;  // euler_energy <= n (dimension 1)
  FisherDiagnostics fisher_diag;
};

FunctionalReport functional_report(const GridDensity1D& mu,
                                   const ReferenceMeasure1D& nu);

// Lagrangian evaluation along the displacement path: no resampling, the
// change of variables is applied under the integral
double entropy_along(const Quantile1DMap& map, const GridDensity1D& mu0,
                     double t);
double relative_entropy_along(const Quantile1DMap& map,
                              const GridDensity1D& mu0, double t,
                              const ReferenceMeasure1D& nu);
double potential_energy_along(const Quantile1DMap& map,
                              const GridDensity1D& mu0, double t,
                              const HomogeneousPotential1D& V);

struct EnergyDerivatives {
  std::vector<double> t;
  std::vector<double> value;  // int V dmu_t
  std::vector<double> d1;     // int <grad V, v_t> dmu_t
  std::vector<double> d2;     // int <hess V v_t, v_t> dmu_t, >= 0 for convex V
};

EnergyDerivatives energy_derivatives(const Quantile1DMap& map,
                                     const GridDensity1D& mu0,
                                     const HomogeneousPotential1D& V,
                                     const std::vector<double>& t_grid);

}  // namespace otlab
