#include "otlab/ou.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace otlab {

GridFunction::GridFunction(Grid1D g, std::vector<double> values)
    : grid(g), v(std::move(values)) {
  if ((int)v.size() != grid.n)
    throw GridMismatchError("function length != grid cells");
}

GridFunction GridFunction::from_function(
    const Grid1D& g, const std::function<double(double)>& f) {
  std::vector<double> vals(g.n);
  for (int i = 0; i < g.n; ++i) vals[i] = f(g.center(i));
  return GridFunction(g, std::move(vals));
}

GridFunction GridFunction::d1() const {
  int n = grid.n;
  double h = grid.h();
  std::vector<double> d(n);
  for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return GridFunction(grid, std::move(d));
}

GridFunction GridFunction::d2() const {
  int n = grid.n;
  double h2 = grid.h() * grid.h();
  std::vector<double> d(n);
  for (int i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
  d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
  d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
  return GridFunction(grid, std::move(d));
}

bool GridFunction::is_even(double tol) const {
  if (std::abs(grid.lo + grid.hi) > 1e-12 * (grid.hi - grid.lo)) return false;
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (int i = 0; i < grid.n; ++i)
    if (std::abs(v[i] - v[grid.n - 1 - i]) > tol * std::max(vmax, 1.0))
      return false;
  return true;
}

GridFunction ou_generator(const GridFunction& u) {
  GridFunction du = u.d1(), ddu = u.d2();
  std::vector<double> out(u.grid.n);
  for (int i = 0; i < u.grid.n; ++i)
    out[i] = ddu.v[i] - u.grid.center(i) * du.v[i];
  return GridFunction(u.grid, std::move(out));
}

GridFunction gamma_carre(const GridFunction& u) {
  GridFunction du = u.d1();
  for (double& x : du.v) x = x * x;
  return du;
}

GridFunction gamma_carre(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid == g.grid)) throw GridMismatchError("gamma needs one grid");
  GridFunction df = f.d1(), dg = g.d1();
  for (int i = 0; i < f.grid.n; ++i) df.v[i] *= dg.v[i];
  return df;
}

GridFunction gamma2(const GridFunction& u) {
  GridFunction du = u.d1(), ddu = u.d2();
  std::vector<double> out(u.grid.n);
  for (int i = 0; i < u.grid.n; ++i)
    out[i] = ddu.v[i] * ddu.v[i] + du.v[i] * du.v[i];
  return GridFunction(u.grid, std::move(out));
}

double integrate(const GridFunction& f, const GridDensity1D& mu) {
  if (!(f.grid == mu.grid)) throw GridMismatchError("integrate grid mismatch");
  double s = 0.0;
  for (int i = 0; i < f.grid.n; ++i) s += f.v[i] * mu.v[i];
  return s * f.grid.h();
}

double ibp_residual(const GridFunction& f, const GridFunction& g,
                    const GridDensity1D& gamma_density) {
  double lhs = integrate(gamma_carre(f, g), gamma_density);
  GridFunction lg = ou_generator(g);
  std::vector<double> flg(f.grid.n);
  for (int i = 0; i < f.grid.n; ++i) flg[i] = f.v[i] * lg.v[i];
  double rhs = integrate(GridFunction(f.grid, std::move(flg)), gamma_density);
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs + rhs) / scale;
}

double bochner_residual(const GridFunction& f,
                        const GridDensity1D& gamma_density) {
  GridFunction g2 = gamma2(f);
  GridFunction lf = ou_generator(f);
  GridFunction gf = gamma_carre(f);
  GridFunction lgf = ou_generator(gf);
  GridFunction cross = gamma_carre(f, lf);
  double scale = 1.0;
  for (int i = 0; i < f.grid.n; ++i)
    scale = std::max(scale, std::abs(g2.v[i]));
  std::vector<double> diff(f.grid.n);
  for (int i = 0; i < f.grid.n; ++i)
    diff[i] = std::abs(g2.v[i] - (0.5 * lgf.v[i] - cross.v[i]));
  return integrate(GridFunction(f.grid, std::move(diff)), gamma_density) /
         scale;
}

double gamma2_inequality_margin(const GridFunction& u, const GridDensity1D& mu,
                                int n_dim) {
  if (!u.is_even(1e-7)) throw NotEvenError("gamma2 inequality needs even u");
  if (!mu.is_even(1e-6)) throw NotEvenError("gamma2 inequality needs even mu");
  double a = integrate(gamma2(u), mu);
  double b = integrate(gamma_carre(u), mu);
  double c = integrate(ou_generator(u), mu);
  return a - 2.0 * b - c * c / n_dim;
}

namespace {

// probabilists' Hermite polynomials, He_{k+1} = x He_k - k He_{k-1}
double hermite(int k, double x) {
  double h0 = 1.0, h1 = x;
  if (k == 0) return h0;
  for (int j = 1; j < k; ++j) {
    double h2 = x * h1 - j * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace

SnMembership s_n_membership(const GridDensity1D& mu, double tol) {
  if (!mu.is_even(1e-6))
    throw NotEvenError("membership test defined for even measures");
  // odd basis: He_1, He_3, ..., He_11 scaled to the grid, sin modes
  double L = mu.grid.hi;
  std::vector<std::function<double(double)>> phi, dphi;
  for (int k = 1; k <= 11; k += 2) {
    phi.push_back([k](double x) { return hermite(k, x); });
    dphi.push_back([k](double x) { return k * hermite(k - 1, x); });
  }
  for (int k = 1; k <= 4; ++k) {
    double w = k * std::numbers::pi / L;
    phi.push_back([w](double x) { return std::sin(w * x); });
    dphi.push_back([w](double x) { return w * std::cos(w * x); });
  }
  int nb = (int)phi.size();
  Eigen::MatrixXd M(nb, nb), K(nb, nb);
  for (int a = 0; a < nb; ++a)
    for (int b = a; b < nb; ++b) {
      double mab = 0.0, kab = 0.0;
      for (int i = 0; i < mu.grid.n; ++i) {
        if (mu.v[i] <= 0.0) continue;
        double x = mu.grid.center(i);
        mab += phi[a](x) * phi[b](x) * mu.v[i];
        kab += dphi[a](x) * dphi[b](x) * mu.v[i];
      }
      M(a, b) = M(b, a) = mab * mu.grid.h();
      K(a, b) = K(b, a) = kab * mu.grid.h();
    }
  // unit-stiffness scaling: high Hermite modes outweigh the sin modes by
  // many orders of magnitude, which would swamp the degeneracy threshold
  Eigen::VectorXd scale(nb);
  for (int a = 0; a < nb; ++a)
    scale(a) = K(a, a) > 0.0 ? 1.0 / std::sqrt(K(a, a)) : 1.0;
  M = scale.asDiagonal() * M * scale.asDiagonal();
  K = scale.asDiagonal() * K * scale.asDiagonal();
  // drop directions where the stiffness degenerates, then solve M v = l K v
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ks(K);
  double kmax = ks.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < nb; ++i)
    if (ks.eigenvalues()(i) > 1e-10 * kmax) keep.push_back(i);
  Eigen::MatrixXd P(nb, (int)keep.size());
  for (int j = 0; j < (int)keep.size(); ++j) {
    P.col(j) = ks.eigenvectors().col(keep[j]) /
               std::sqrt(ks.eigenvalues()(keep[j]));
  }
  Eigen::MatrixXd Mr = P.transpose() * M * P;  // K becomes identity
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ms(Mr);
  int top = (int)keep.size() - 1;
  SnMembership out;
  out.odd_poincare_estimate = ms.eigenvalues()(top);
  out.not_falsified = out.odd_poincare_estimate <= 1.0 + tol;
  Eigen::VectorXd w = scale.asDiagonal() * (P * ms.eigenvectors().col(top));
  out.witness.assign(w.data(), w.data() + nb);
  return out;
}

GridDensity1D ou_evolve(const GridDensity1D& mu, double t) {
  if (t < 0.0) throw UnsupportedError("ou_evolve needs t >= 0");
  if (t == 0.0) return mu;
  double e = std::exp(-t);
  double s2 = 1.0 - e * e;
  double s = std::sqrt(s2);
  const Grid1D& g = mu.grid;
  double h = g.h();
  double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * s2);
  int window = (int)std::ceil(9.0 * s / h) + 1;
  std::vector<double> out(g.n, 0.0);
  for (int j = 0; j < g.n; ++j) {
    double mj = mu.v[j];
    if (mj <= 0.0) continue;
    double cj = e * g.center(j);
    int i0 = std::max(0, (int)std::floor((cj - g.lo) / h - window));
    int i1 = std::min(g.n - 1, (int)std::ceil((cj - g.lo) / h + window));
    for (int i = i0; i <= i1; ++i) {
      double d = (g.center(i) - cj) / s;
      out[i] += mj * std::exp(-0.5 * d * d);
    }
  }
  for (double& x : out) x *= norm * h;
  return GridDensity1D(g, std::move(out));
}

double CoefficientSet::theta_max() const {
  return std::sqrt(0.5 * n) * std::numbers::pi;
}

double CoefficientSet::s(double theta) const {
  return std::sqrt(0.5 * n) * std::sin(std::sqrt(2.0 / n) * theta);
}

double CoefficientSet::c(double theta) const {
  return std::cos(std::sqrt(2.0 / n) * theta);
}

double CoefficientSet::sigma(double t, double theta) const {
  if (theta < 0.0) throw UnsupportedError("sigma needs theta >= 0");
  if (theta >= theta_max()) return kInf;
  if (theta == 0.0) return t;
  return s(t * theta) / s(theta);
}

EntropyDerivatives entropy_derivatives_along(
    const Quantile1DMap& map, const GridDensity1D& mu0,
    const std::vector<double>& t_grid) {
  EntropyDerivatives out;
  out.t = t_grid;
  double h = mu0.grid.h();
  for (double t : t_grid) {
    double d1 = 0.0, d2 = 0.0;
    for (int k = 0; k < map.size(); ++k) {
      double m = mu0.v[map.first + k];
      if (m <= 0.0) continue;
      double y = (1.0 - t) * map.x(k) + t * map.T[k];
      double vel = map.T[k] - map.x(k);
      double dTt = std::max((1.0 - t) + t * map.dT[k], 1e-12);
      double dvel = (map.dT[k] - 1.0) / dTt;
      d1 -= m * (dvel - y * vel);
      d2 += m * (dvel * dvel + vel * vel);
    }
    out.d1.push_back(d1 * h);
    out.d2.push_back(d2 * h);
  }
  return out;
}

}  // namespace otlab
