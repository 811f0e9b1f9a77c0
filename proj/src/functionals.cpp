#include "otlab/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace otlab {

double entropy(const GridDensity1D& mu) {
  double s = 0.0;
  for (double x : mu.v) s -= xlogx(x);
  return s * mu.grid.h();
}

double relative_entropy(const GridDensity1D& mu,
                        const ReferenceMeasure1D& nu) {
  // the reference has full support: its log density stays finite even where
  // the density itself underflows
  double s = 0.0;
  for (int i = 0; i < mu.grid.n; ++i) {
    double m = mu.v[i];
    if (m <= 0.0) continue;
    s += m * (std::log(m) - nu.log_density(mu.grid.center(i)));
  }
  return s * mu.grid.h();
}

double relative_entropy(const GridDensity1D& mu, const GridDensity1D& nu) {
  if (!(mu.grid == nu.grid))
    throw GridMismatchError("relative entropy needs a common grid");
  double s = 0.0;
  for (int i = 0; i < mu.grid.n; ++i) {
    double m = mu.v[i];
    if (m <= 0.0) continue;
    if (nu.v[i] <= 0.0) return kInf;
    s += m * std::log(m / nu.v[i]);
  }
  return s * mu.grid.h();
}

double fisher_information(const GridDensity1D& mu,
                          const ReferenceMeasure1D& nu,
                          FisherDiagnostics* diag) {
  FisherDiagnostics local;
  auto [a, b] = mu.support();
  double vmax = *std::max_element(mu.v.begin(), mu.v.end());
  const double jump_tol = 1e-6;

  for (int i = a; i <= b; ++i)
    if (mu.v[i] == 0.0) {
      local.disconnected_support = true;
      break;
    }
  // mass sitting on a support edge means the density jumps there
  if (mu.v[a] > jump_tol * vmax || mu.v[b] > jump_tol * vmax)
    local.boundary_jump = true;

  if (diag) *diag = local;
  if (local.boundary_jump || local.disconnected_support) return kInf;

  double h = mu.grid.h(), s = 0.0;
  auto logf = [&](int i) {
    return std::log(mu.v[i]) - nu.log_density(mu.grid.center(i));
  };
  for (int i = a; i <= b; ++i) {
    if (mu.v[i] <= 0.0) continue;
    double d;
    if (i > a && i < b) {
      d = (logf(i + 1) - logf(i - 1)) / (2.0 * h);
    } else if (i == a && i + 2 <= b) {
      d = (-3.0 * logf(i) + 4.0 * logf(i + 1) - logf(i + 2)) / (2.0 * h);
    } else if (i == b && i - 2 >= a) {
      d = (3.0 * logf(i) - 4.0 * logf(i - 1) + logf(i - 2)) / (2.0 * h);
    } else {
      continue;  // support of one or two cells carries no gradient signal
    }
    s += d * d * mu.v[i];
  }
  return s * h;
}

double potential_energy(const GridDensity1D& mu,
                        const HomogeneousPotential1D& V) {
  return quadrature(mu, [&](double x) { return V(x); });
}

double euler_energy(const GridDensity1D& mu,
                    const HomogeneousPotential1D& V) {
  return quadrature(mu, [&](double x) { return V.d1(x) * x; });
}

double renyi_A(const GridDensity1D& mu, int n_dim) {
  double e = 1.0 - 1.0 / n_dim, s = 0.0;
  for (double x : mu.v)
    if (x > 0.0) s += std::pow(x, e);
  return s * mu.grid.h();
}

RadialMonotonicity radial_monotonicity_check(const GridDensity1D& mu,
                                             const ReferenceMeasure1D& nu,
                                             double tol) {
  if (!(mu.grid == nu.grid)) throw GridMismatchError("radial check: grids differ");
  RadialMonotonicity out;
  std::vector<double> f(mu.grid.n, 0.0);
  double fmax = 0.0;
  for (int i = 0; i < mu.grid.n; ++i) {
    if (mu.v[i] <= 0.0) continue;
    f[i] = mu.v[i] * std::exp(-nu.log_density(mu.grid.center(i)));
    fmax = std::max(fmax, f[i]);
  }
  if (fmax <= 0.0) throw ZeroMassError("radial check: empty density");
  double worst = 0.0;
  for (int i = 0; i + 1 < mu.grid.n; ++i) {
    if (mu.v[i] <= 0.0 || mu.v[i + 1] <= 0.0) continue;  // support edge
    double rise = f[i + 1] - f[i];
    // moving right: outward for x >= 0, inward for x < 0
    if (mu.grid.center(i) >= 0.0 && rise > 0.0) worst = std::max(worst, rise);
    if (mu.grid.center(i + 1) <= 0.0 && rise < 0.0) worst = std::max(worst, -rise);
  }
  out.max_violation = worst / fmax;
  out.holds = out.max_violation <= tol;
  return out;
}

FunctionalReport functional_report(const GridDensity1D& mu,
                                   const ReferenceMeasure1D& nu) {
  FunctionalReport r;
  r.entropy = entropy(mu);
  r.relative_entropy = relative_entropy(mu, nu);
  r.fisher = fisher_information(mu, nu, &r.fisher_diag);
  r.potential_energy = potential_energy(mu, nu.pot);
  r.euler_energy = euler_energy(mu, nu.pot);
  r.moment2 = mu.moment2();
  r.renyi = renyi_A(mu, 1);
  r.in_displacement_class = r.euler_energy <= 1.0 + 1e-9;
  return r;
}

double entropy_along(const Quantile1DMap& map, const GridDensity1D& mu0,
                     double t) {
  double h = mu0.grid.h(), s = 0.0;
  for (int k = 0; k < map.size(); ++k) {
    double m = mu0.v[map.first + k];
    if (m <= 0.0) continue;
    double dTt = std::max((1.0 - t) + t * map.dT[k], 1e-300);
    s -= m * std::log(m / dTt);
  }
  return s * h;
}

double relative_entropy_along(const Quantile1DMap& map,
                              const GridDensity1D& mu0, double t,
                              const ReferenceMeasure1D& nu) {
  double h = mu0.grid.h(), s = 0.0;
  for (int k = 0; k < map.size(); ++k) {
    double m = mu0.v[map.first + k];
    if (m <= 0.0) continue;
    double dTt = std::max((1.0 - t) + t * map.dT[k], 1e-300);
    double y = (1.0 - t) * map.x(k) + t * map.T[k];
    s += m * (std::log(m / dTt) - nu.log_density(y));
  }
  return s * h;
}

double potential_energy_along(const Quantile1DMap& map,
                              const GridDensity1D& mu0, double t,
                              const HomogeneousPotential1D& V) {
  double h = mu0.grid.h(), s = 0.0;
  for (int k = 0; k < map.size(); ++k) {
    double m = mu0.v[map.first + k];
    if (m <= 0.0) continue;
    s += m * V((1.0 - t) * map.x(k) + t * map.T[k]);
  }
  return s * h;
}

EnergyDerivatives energy_derivatives(const Quantile1DMap& map,
                                     const GridDensity1D& mu0,
                                     const HomogeneousPotential1D& V,
                                     const std::vector<double>& t_grid) {
  EnergyDerivatives out;
  out.t = t_grid;
  double h = mu0.grid.h();
  for (double t : t_grid) {
    double val = 0.0, d1 = 0.0, d2 = 0.0;
    for (int k = 0; k < map.size(); ++k) {
      double m = mu0.v[map.first + k];
      if (m <= 0.0) continue;
      double y = (1.0 - t) * map.x(k) + t * map.T[k];
      double w = map.T[k] - map.x(k);
      val += m * V(y);
      d1 += m * V.d1(y) * w;
      d2 += m * V.d2(y) * w * w;
    }
    out.value.push_back(val * h);
    out.d1.push_back(d1 * h);
    out.d2.push_back(d2 * h);
  }
  return out;
}

}  // namespace otlab
