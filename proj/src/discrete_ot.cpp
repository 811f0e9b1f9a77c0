#include "otlab/discrete.hpp"

#include <algorithm>
#include <cmath>

namespace otlab {

DiscreteMeasure::DiscreteMeasure(std::vector<std::vector<double>> pts,
                                 std::vector<double> w)
    : points(std::move(pts)), weights(std::move(w)) {
  if (points.size() != weights.size())
    throw GridMismatchError("points/weights length mismatch");
  if (points.empty()) throw ZeroMassError("empty point cloud");
  std::size_t d = points[0].size();
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d)
      throw GridMismatchError("ragged point dimensions");
    if (!(weights[i] >= 0.0))
      throw NegativeDensityError("negative point weight");
    total += weights[i];
  }
  if (total <= 0.0) throw ZeroMassError("zero total weight");
  for (double& x : weights) x /= total;
}

double DiscreteMeasure::moment2() const {
  double m = 0.0;
  for (int i = 0; i < size(); ++i) {
    double r2 = 0.0;
    for (double c : points[i]) r2 += c * c;
    m += weights[i] * r2;
  }
  return m;
}

double cost_matrix_entry(const DiscreteMeasure& a, const DiscreteMeasure& b,
                         int i, int j) {
  double c = 0.0;
  for (int k = 0; k < a.dim(); ++k) {
    double d = a.points[i][k] - b.points[j][k];
    c += d * d;
  }
  return c;
}

namespace {

double logsumexp(const std::vector<double>& terms) {
  double m = -kInf;
  for (double t : terms) m = std::max(m, t);
  if (m == -kInf) return m;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return m + std::log(s);
}

}  // namespace

DiscreteCoupling sinkhorn(const DiscreteMeasure& mu0,
                          const DiscreteMeasure& mu1, double eps, int max_iter,
                          double tol) {
  if (mu0.dim() != mu1.dim()) throw GridMismatchError("cloud dims disagree");
  if (eps <= 0.0) throw UnsupportedError("sinkhorn needs eps > 0");
  int m = mu0.size(), n = mu1.size();
  std::vector<double> C(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      C[i * n + j] = cost_matrix_entry(mu0, mu1, i, j);

  std::vector<double> f(m, 0.0), g(n, 0.0);
  std::vector<double> la(m), lb(n);
  for (int i = 0; i < m; ++i)
    la[i] = mu0.weights[i] > 0.0 ? std::log(mu0.weights[i]) : -kInf;
  for (int j = 0; j < n; ++j)
    lb[j] = mu1.weights[j] > 0.0 ? std::log(mu1.weights[j]) : -kInf;

  DiscreteCoupling out;
  out.rows = m;
  out.cols = n;
  std::vector<double> row(n), col(m);
  int it = 0;
  double err = kInf;
  for (; it < max_iter; ++it) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) row[j] = (g[j] - C[i * n + j]) / eps + lb[j];
      f[i] = la[i] == -kInf ? -kInf : -eps * logsumexp(row) + 0.0;
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) col[i] = (f[i] - C[i * n + j]) / eps + la[i];
      g[j] = lb[j] == -kInf ? -kInf : -eps * logsumexp(col);
    }
    // column update is exact by construction; measure the row marginals
    err = 0.0;
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += std::exp((f[i] + g[j] - C[i * n + j]) / eps + la[i] + lb[j]);
      err += std::abs(s - mu0.weights[i]);
    }
    if (err < tol) break;
  }
  if (err >= tol && err > 1e-7)
    throw NoConvergenceError("sinkhorn stalled above marginal tolerance");

  out.pi.resize(m * n);
  out.cost = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double p =
          std::exp((f[i] + g[j] - C[i * n + j]) / eps + la[i] + lb[j]);
      out.pi[i * n + j] = p;
      out.cost += p * C[i * n + j];
    }
  out.iterations = it + 1;
  out.marginal_error = err;
  return out;
}

// transportation simplex with northwest-corner start and MODI pivoting
DiscreteCoupling exact_coupling(const DiscreteMeasure& mu0,
                                const DiscreteMeasure& mu1) {
  int m = mu0.size(), n = mu1.size();
  if (m > 64 || n > 64)
    throw UnsupportedError("exact coupling limited to 64 points per side");
  std::vector<double> C(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      C[i * n + j] = cost_matrix_entry(mu0, mu1, i, j);

  // epsilon-perturbed supplies keep the basis nondegenerate
  double pert = 1e-11;
  std::vector<double> a(mu0.weights), b(mu1.weights);
  for (int i = 0; i < m; ++i) a[i] += pert;
  b[n - 1] += pert * m;

  std::vector<double> flow(m * n, 0.0);
  std::vector<char> basic(m * n, 0);
  {
    int i = 0, j = 0;
    std::vector<double> ra = a, rb = b;
    while (i < m && j < n) {
      double f = std::min(ra[i], rb[j]);
      flow[i * n + j] = f;
      basic[i * n + j] = 1;
      ra[i] -= f;
      rb[j] -= f;
      if (i == m - 1 && j == n - 1) break;
      if (ra[i] <= rb[j])
        ++i;
      else
        ++j;
    }
  }

  std::vector<double> u(m), v(n);
  std::vector<int> path;
  int guard = 200 * m * n + 1000;
  for (int iter = 0; iter < guard; ++iter) {
    // duals from the basis tree: u_i + v_j = c_ij on basic cells
    std::vector<char> useen(m, 0), vseen(n, 0);
    u[0] = 0.0;
    useen[0] = 1;
    bool progress = true;
    while (progress) {
      progress = false;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          if (!basic[i * n + j]) continue;
          if (useen[i] && !vseen[j]) {
            v[j] = C[i * n + j] - u[i];
            vseen[j] = 1;
            progress = true;
          } else if (vseen[j] && !useen[i]) {
            u[i] = C[i * n + j] - v[j];
            useen[i] = 1;
            progress = true;
          }
        }
    }

    int bi = -1, bj = -1;
    double best = -1e-12;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        if (basic[i * n + j]) continue;
        double r = C[i * n + j] - u[i] - v[j];
        if (r < best) {
          best = r;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;  // optimal

    // unique cycle through (bi,bj) in the basis graph; depth-first search
    // over rows and columns alternating
    std::vector<int> parent(m + n, -2);
    std::vector<int> stack;
    stack.push_back(bi);  // row nodes are [0,m), column nodes m + j
    parent[bi] = -1;
    bool found = false;
    while (!stack.empty() && !found) {
      int node = stack.back();
      stack.pop_back();
      if (node < m) {
        int i = node;
        for (int j = 0; j < n; ++j) {
          if (!basic[i * n + j]) continue;
          if (parent[m + j] == -2) {
            parent[m + j] = i;
            stack.push_back(m + j);
          }
        }
      } else {
        int j = node - m;
        if (j == bj) {
          found = true;
          break;
        }
        for (int i = 0; i < m; ++i) {
          if (!basic[i * n + j]) continue;
          if (parent[i] == -2) {
            parent[i] = m + j;
            stack.push_back(i);
          }
        }
      }
    }
    if (parent[m + bj] == -2)
      throw NoConvergenceError("transport basis lost connectivity");

    // walk back from column bj to row bi, collecting the cycle cells
    path.clear();
    int node = m + bj;
    while (node != -1) {
      int par = parent[node];
      if (node >= m)
        path.push_back(par * n + (node - m));  // row par -> col node
      else if (par >= m)
        path.push_back(node * n + (par - m));  // row node -> col par
      node = par == -2 ? -1 : par;
      if (par == -1) break;
    }
    path.insert(path.begin(), bi * n + bj);

    // alternate signs along the cycle starting + at the entering cell
    double theta = kInf;
    int leave = -1;
    for (std::size_t k = 1; k < path.size(); k += 2) {
      if (flow[path[k]] < theta) {
        theta = flow[path[k]];
        leave = path[k];
      }
    }
    if (leave < 0) throw NoConvergenceError("degenerate transport cycle");
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (k % 2 == 0)
        flow[path[k]] += theta;
      else
        flow[path[k]] -= theta;
    }
    basic[bi * n + bj] = 1;
    basic[leave] = 0;
    flow[leave] = 0.0;
    if (iter == guard - 1)
      throw NoConvergenceError("transportation simplex iteration cap");
  }

  DiscreteCoupling out;
  out.rows = m;
  out.cols = n;
  out.pi.assign(m * n, 0.0);
  out.cost = 0.0;
  // strip the perturbation before reporting
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double p = std::max(0.0, flow[i * n + j]);
      out.pi[i * n + j] = p;
      out.cost += p * C[i * n + j];
    }
  double total = 0.0;
  for (double p : out.pi) total += p;
  for (double& p : out.pi) p /= total;
  out.cost /= total;
  out.marginal_error = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += out.pi[i * n + j];
    out.marginal_error += std::abs(s - mu0.weights[i]);
  }
  return out;
}

}  // namespace otlab
