#include "mhess/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>
#include <numeric>

#include "mhess/symfunc.hpp"

namespace mhess {

namespace {

NewtonOptions with_default_tol(const NewtonOptions& opts, double tol) {
  NewtonOptions o = opts;
  if (o.tolerance <= 0.0) o.tolerance = tol;
  return o;
}

// Thomas algorithm for a tridiagonal system; overwrites rhs with the result.
void solve_tridiagonal(std::vector<double>& lo, std::vector<double>& di,
                       std::vector<double>& up, std::vector<double>& rhs) {
  const std::size_t n = di.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double f = lo[i] / di[i - 1];
    di[i] -= f * up[i - 1];
    rhs[i] -= f * rhs[i - 1];
  }
  rhs[n - 1] /= di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Discretized radial operator T_m[w] - psi with symmetric pole closure.
struct RadialOde {
  int n, m, nn;
  double radius, h;
  std::vector<double> psi, rr;
  double c1, c2, cnm;

  RadialOde(int n_, int m_, const std::function<double(double)>& psi_fn, double radius_,
            int n_nodes)
      : n(n_), m(m_), nn(n_nodes), radius(radius_), h(radius_ / (n_nodes - 1)) {
    c1 = binomial(n - 1, m - 1);
    c2 = binomial(n - 1, m);
    cnm = binomial(n, m);
    psi.resize(static_cast<std::size_t>(nn));
    rr.resize(static_cast<std::size_t>(nn));
    for (int i = 0; i < nn; ++i) {
      rr[static_cast<std::size_t>(i)] = h * i;
      psi[static_cast<std::size_t>(i)] = psi_fn(h * i);
      require(psi[static_cast<std::size_t>(i)] > 0.0,
              "solve_radial_ode: psi must be positive");
    }
  }

  // unknowns w_0..w_{nn-2}; w_{nn-1} = 0
  double w_at(const std::vector<double>& w, int i) const {
    return i <= nn - 2 ? w[static_cast<std::size_t>(i)] : 0.0;
  }

  void residual(const std::vector<double>& w, std::vector<double>* f) const {
    f->assign(static_cast<std::size_t>(nn - 1), 0.0);
    const double t0 = 2.0 * (w_at(w, 1) - w_at(w, 0)) / (h * h);
    (*f)[0] = cnm * std::pow(t0, m) - psi[0];
    for (int i = 1; i <= nn - 2; ++i) {
      const double d1 = (w_at(w, i + 1) - w_at(w, i - 1)) / (2.0 * h);
      const double d2 = (w_at(w, i + 1) - 2.0 * w_at(w, i) + w_at(w, i - 1)) / (h * h);
      const double q = d1 / rr[static_cast<std::size_t>(i)];
      (*f)[static_cast<std::size_t>(i)] =
          c1 * d2 * std::pow(q, m - 1) + c2 * std::pow(q, m) - psi[static_cast<std::size_t>(i)];
    }
  }

  void jacobian(const std::vector<double>& w, std::vector<double>* lo, std::vector<double>* di,
                std::vector<double>* up) const {
    const std::size_t sz = static_cast<std::size_t>(nn - 1);
    lo->assign(sz, 0.0);
    di->assign(sz, 0.0);
    up->assign(sz, 0.0);
    const double t0 = 2.0 * (w_at(w, 1) - w_at(w, 0)) / (h * h);
    const double dpole = cnm * m * std::pow(t0, m - 1) * 2.0 / (h * h);
    (*di)[0] = -dpole;
    (*up)[0] = dpole;
    for (int i = 1; i <= nn - 2; ++i) {
      const double ri = rr[static_cast<std::size_t>(i)];
      const double d1 = (w_at(w, i + 1) - w_at(w, i - 1)) / (2.0 * h);
      const double d2 = (w_at(w, i + 1) - 2.0 * w_at(w, i) + w_at(w, i - 1)) / (h * h);
      const double q = d1 / ri;
      const double df_dd2 = c1 * std::pow(q, m - 1);
      const double df_dq = (m > 1 ? c1 * (m - 1) * d2 * std::pow(q, m - 2) : 0.0) +
                           c2 * m * std::pow(q, m - 1);
      (*lo)[static_cast<std::size_t>(i)] = df_dd2 / (h * h) - df_dq / (2.0 * h * ri);
      (*di)[static_cast<std::size_t>(i)] = -2.0 * df_dd2 / (h * h);
      (*up)[static_cast<std::size_t>(i)] = df_dd2 / (h * h) + df_dq / (2.0 * h * ri);
    }
  }

  // min over unknown nodes and orders p <= m of T_p(Hessian eigenvalues),
  // threshold-adjusted; positive iff the iterate is admissible.
  double cone_margin(const std::vector<double>& w) const {
    double worst = std::numeric_limits<double>::infinity();
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int i = 0; i <= nn - 2; ++i) {
      double d2, q;
      if (i == 0) {
        d2 = 2.0 * (w_at(w, 1) - w_at(w, 0)) / (h * h);
        q = d2;
      } else {
        d2 = (w_at(w, i + 1) - 2.0 * w_at(w, i) + w_at(w, i - 1)) / (h * h);
        q = (w_at(w, i + 1) - w_at(w, i - 1)) / (2.0 * h) / rr[static_cast<std::size_t>(i)];
      }
      lambda[0] = d2;
      for (int k = 1; k < n; ++k) lambda[static_cast<std::size_t>(k)] = q;
      double scale = 1.0;
      for (double l : lambda) scale = std::max(scale, std::abs(l));
      const double tau = 1e-12 * std::pow(scale, m);
      const std::vector<double> e = elementary_symmetric(lambda);
      for (int p = 1; p <= m; ++p)
        worst = std::min(worst, e[static_cast<std::size_t>(p)] - tau);
    }
    return worst;
  }
};

}  // namespace

DirichletProblem::DirichletProblem(Domain domain_, int n_, int m_, int l_,
                                   std::function<double(double, double)> psi_)
    : domain(std::move(domain_)), n(n_), m(m_), l(l_), psi(std::move(psi_)) {
  require(n >= 2 && n <= 8, "DirichletProblem: dimension must be in [2, 8]");
  require(l >= 0 && l < m && m <= n, "DirichletProblem: need 0 <= l < m <= n");
  require(domain.dim() == n, "DirichletProblem: domain dimension mismatch");
  const ConvexityVerdict gate = is_boundary_m_convex(domain, m);
  if (!gate.convex) {
    throw ConvexityGateError(
        "boundary (m-1)-convexity gate failed: k_{m-1} vanishes somewhere on the "
        "boundary, so no admissible function with constant boundary data exists");
  }
}

std::pair<double, RadialFunction> solve_radial_quadratic(int n, int m, int l, double radius,
                                                         int n_nodes) {
  require(n >= 2 && n <= 8, "solve_radial_quadratic: dimension must be in [2, 8]");
  require(l >= 0 && l < m && m <= n, "solve_radial_quadratic: need 0 <= l < m <= n");
  require(radius > 0.0, "solve_radial_quadratic: radius must be positive");
  const double a = std::pow(binomial(n, l) / binomial(n, m), 1.0 / (m - l));
  return {a, RadialFunction::quadratic(a, radius, n_nodes)};
}

RadialSolution solve_radial_ode(int n, int m, const std::function<double(double)>& psi,
                                double radius, int n_nodes, const NewtonOptions& opts_in) {
  require(n >= 2 && n <= 8, "solve_radial_ode: dimension must be in [2, 8]");
  require(m >= 1 && m <= n, "solve_radial_ode: order out of range");
  require(n_nodes >= RadialFunction::kMinNodes, "solve_radial_ode: need at least 9 nodes");
  const NewtonOptions opts = with_default_tol(opts_in, 1e-9);

  const RadialOde ode(n, m, psi, radius, n_nodes);
  const double psi_mean =
      std::accumulate(ode.psi.begin(), ode.psi.end(), 0.0) / double(n_nodes);
  const double a0 =
      opts.initial_scale * std::pow(std::max(psi_mean, 1e-12) / ode.cnm, 1.0 / m);

  std::vector<double> w(static_cast<std::size_t>(n_nodes - 1));
  for (int i = 0; i <= n_nodes - 2; ++i) {
    const double r = ode.rr[static_cast<std::size_t>(i)];
    w[static_cast<std::size_t>(i)] = a0 * (r * r - radius * radius) / 2.0;
  }

  std::vector<double> f, lo, di, up, trial;
  ode.residual(w, &f);
  double res = inf_norm(f);
  int iter = 0;
  std::vector<double> history{res};
  while (res > opts.tolerance) {
    if (++iter > opts.max_iterations)
      throw ConvergenceError("solve_radial_ode: no convergence after max iterations", res);
    ode.jacobian(w, &lo, &di, &up);
    std::vector<double> step = f;
    for (double& v : step) v = -v;
    solve_tridiagonal(lo, di, up, step);

    double s = 1.0;
    bool accepted = false;
    bool cone_blocked = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
      trial = w;
      for (std::size_t k = 0; k < w.size(); ++k) trial[k] += s * step[k];
      if (ode.cone_margin(trial) <= opts.cone_margin) {
        cone_blocked = true;
        s *= 0.5;
        continue;
      }
      std::vector<double> ft;
      ode.residual(trial, &ft);
      const double rt = inf_norm(ft);
      if (rt < res) {
        w = trial;
        f = std::move(ft);
        res = rt;
        history.push_back(res);
        accepted = true;
        break;
      }
      cone_blocked = false;
      s *= 0.5;
    }
    if (!accepted) {
      if (cone_blocked)
        throw ConeExitError(
            "solve_radial_ode: iterate left the cone; refine the grid or increase damping",
            res);
      throw ConvergenceError("solve_radial_ode: line search stalled", res);
    }
  }

  std::vector<double> full(static_cast<std::size_t>(n_nodes), 0.0);
  for (int i = 0; i <= n_nodes - 2; ++i) full[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)];
  RadialFunction sol(radius, std::move(full));

  // nonpositive branch contract
  double max_w = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < sol.size(); ++i) max_w = std::max(max_w, sol[i]);
  require(max_w <= 1e-12, "solve_radial_ode: positive-branch output rejected");

  AdmissibilityReport adm = grid_admissibility(sol, n, m);
  return RadialSolution{std::move(sol), res, iter, adm, "nonpositive", std::move(history)};
}

namespace {

// Per-node differential data for the 2-D Newton iteration.
struct GridOperator {
  PolarGrid grid;
  int m, l;
  std::vector<double> psi;               // at residual nodes
  std::vector<HessianStencil> stencils;  // at residual nodes
  std::size_t n_unknowns;

  GridOperator(const DirichletProblem& p, int nr, int ntheta)
      : grid(p.domain, nr, ntheta), m(p.m), l(p.l) {
    n_unknowns = 1 + static_cast<std::size_t>(nr - 2) * static_cast<std::size_t>(ntheta);
    psi.resize(n_unknowns);
    stencils.resize(n_unknowns);
    auto setup = [&](int i, int j) {
      const std::size_t k = grid.node_index(i, j);
      const auto xy = grid.xy(i, j);
      psi[k] = p.psi(xy[0], xy[1]);
      require(psi[k] > 0.0, "solve_grid_newton: psi must be positive");
      stencils[k] = hessian_stencil(grid, i, j);
    };
    setup(0, 0);
    for (int i = 1; i <= nr - 2; ++i)
      for (int j = 0; j < ntheta; ++j) setup(i, j);
  }

  double w_at(const std::vector<double>& w, std::size_t node) const {
    return node < n_unknowns ? w[node] : 0.0;  // zero Dirichlet ring
  }

  void hessian_at(const std::vector<double>& w, std::size_t k, double* xx, double* xy,
                  double* yy) const {
    double a = 0.0, b = 0.0, c = 0.0;
    for (const auto& t : stencils[k].terms) {
      const double v = w_at(w, t.node);
      a += t.cxx * v;
      b += t.cxy * v;
      c += t.cyy * v;
    }
    *xx = a;
    *xy = b;
    *yy = c;
  }

  static double trace_of(int p, double xx, double xy, double yy) {
    if (p == 0) return 1.0;
    if (p == 1) return xx + yy;
    return xx * yy - xy * xy;
  }

  // gradient of T_p with respect to (xx, xy, yy); the xy slot already
  // carries the factor 2 from the two symmetric entries
  static void trace_grad(int p, double xx, double xy, double yy, double g[3]) {
    if (p == 0) {
      g[0] = g[1] = g[2] = 0.0;
    } else if (p == 1) {
      g[0] = 1.0;
      g[1] = 0.0;
      g[2] = 1.0;
    } else {
      g[0] = yy;
      g[1] = -2.0 * xy;
      g[2] = xx;
    }
  }

  void residual(const std::vector<double>& w, std::vector<double>* f) const {
    f->assign(n_unknowns, 0.0);
    for (std::size_t k = 0; k < n_unknowns; ++k) {
      double xx, xy, yy;
      hessian_at(w, k, &xx, &xy, &yy);
      (*f)[k] = trace_of(m, xx, xy, yy) - psi[k] * trace_of(l, xx, xy, yy);
    }
  }

  Eigen::SparseMatrix<double> jacobian(const std::vector<double>& w) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n_unknowns * 12);
    for (std::size_t k = 0; k < n_unknowns; ++k) {
      double xx, xy, yy;
      hessian_at(w, k, &xx, &xy, &yy);
      double gm[3], gl[3];
      trace_grad(m, xx, xy, yy, gm);
      trace_grad(l, xx, xy, yy, gl);
      const double a[3] = {gm[0] - psi[k] * gl[0], gm[1] - psi[k] * gl[1],
                           gm[2] - psi[k] * gl[2]};
      for (const auto& t : stencils[k].terms) {
        if (t.node >= n_unknowns) continue;  // Dirichlet ring
        const double coef = a[0] * t.cxx + a[1] * t.cxy + a[2] * t.cyy;
        trip.emplace_back(static_cast<int>(k), static_cast<int>(t.node), coef);
      }
    }
    Eigen::SparseMatrix<double> jac(static_cast<int>(n_unknowns),
                                    static_cast<int>(n_unknowns));
    jac.setFromTriplets(trip.begin(), trip.end());
    return jac;
  }

  double cone_margin(const std::vector<double>& w) const {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_unknowns; ++k) {
      double xx, xy, yy;
      hessian_at(w, k, &xx, &xy, &yy);
      const double scale = std::max({1.0, std::abs(xx), std::abs(xy), std::abs(yy)});
      const double tau = 1e-12 * std::pow(scale, m);
      worst = std::min(worst, trace_of(1, xx, xy, yy) - tau);
      if (m == 2) worst = std::min(worst, trace_of(2, xx, xy, yy) - tau);
    }
    return worst;
  }
};

}  // namespace

GridSolution solve_grid_newton(const DirichletProblem& problem, int nr, int ntheta,
                               const NewtonOptions& opts_in) {
  require(problem.n == 2, "solve_grid_newton: only n = 2 grids are supported");
  require(problem.m >= 1 && problem.m <= 2, "solve_grid_newton: order must be 1 or 2");
  const NewtonOptions opts = with_default_tol(opts_in, 1e-7);

  GridOperator op(problem, nr, ntheta);
  const PolarGrid& g = op.grid;

  // initial iterate: scaled reference quadratic c (rho^2 - R_ref^2)/2
  const auto sc = problem.domain.scales();
  const double h0xx = 1.0 / (sc[0] * sc[0]);
  const double h0yy = 1.0 / (sc[1] * sc[1]);
  const double tm0 = GridOperator::trace_of(problem.m, h0xx, 0.0, h0yy);
  const double tl0 = GridOperator::trace_of(problem.l, h0xx, 0.0, h0yy);
  const double psi_mean =
      std::accumulate(op.psi.begin(), op.psi.end(), 0.0) / double(op.psi.size());
  double c0_pow = psi_mean * tl0 / tm0;
  // T_p(c H0) = c^p T_p(H0), so match means: c^{m-l} tm0/tl0 = psi_mean
  const double c0 = opts.initial_scale * std::pow(c0_pow, 1.0 / (problem.m - problem.l));
  const double rref = problem.domain.reference_radius();

  std::vector<double> w(op.n_unknowns, 0.0);
  w[0] = c0 * (-rref * rref) / 2.0;
  for (int i = 1; i <= nr - 2; ++i)
    for (int j = 0; j < ntheta; ++j) {
      const double rho = g.rho(i);
      w[g.node_index(i, j)] = c0 * (rho * rho - rref * rref) / 2.0;
    }

  std::vector<double> f;
  op.residual(w, &f);
  double res = inf_norm(f);
  int iter = 0;
  std::vector<double> history{res};
  std::vector<double> trial;
  while (res > opts.tolerance) {
    if (++iter > opts.max_iterations)
      throw ConvergenceError("solve_grid_newton: no convergence after max iterations", res);
    Eigen::SparseMatrix<double> jac = op.jacobian(w);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success)
      throw ConvergenceError("solve_grid_newton: singular linearization", res);
    Eigen::VectorXd rhs(static_cast<long>(op.n_unknowns));
    for (std::size_t k = 0; k < op.n_unknowns; ++k) rhs[static_cast<long>(k)] = -f[k];
    const Eigen::VectorXd step = lu.solve(rhs);

    double s = 1.0;
    bool accepted = false;
    bool cone_blocked = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
      trial = w;
      for (std::size_t k = 0; k < w.size(); ++k) trial[k] += s * step[static_cast<long>(k)];
      if (op.cone_margin(trial) <= opts.cone_margin) {
        cone_blocked = true;
        s *= 0.5;
        continue;
      }
      std::vector<double> ft;
      op.residual(trial, &ft);
      const double rt = inf_norm(ft);
      if (rt < res) {
        w = trial;
        f = std::move(ft);
        res = rt;
        history.push_back(res);
        accepted = true;
        break;
      }
      cone_blocked = false;
      s *= 0.5;
    }
    if (!accepted) {
      if (cone_blocked)
        throw ConeExitError(
            "solve_grid_newton: iterate left the cone; refine the grid or increase damping",
            res);
      throw ConvergenceError("solve_grid_newton: line search stalled", res);
    }
  }

  std::vector<double> full(g.node_count(), 0.0);
  for (std::size_t k = 0; k < op.n_unknowns; ++k) full[k] = w[k];
  GridFunction2D sol(g, std::move(full));

  double max_w = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < g.node_count(); ++k) max_w = std::max(max_w, sol.node(k));
  require(max_w <= 1e-12, "solve_grid_newton: positive-branch output rejected");

  AdmissibilityReport adm = grid_admissibility(sol, problem.m);
  return GridSolution{std::move(sol), res, iter, adm, "nonpositive", std::move(history)};
}

double quotient_solution_residual(const RadialFunction& w, int n, int m, int l) {
  require(l >= 0 && l < m && m <= n, "quotient_solution_residual: need 0 <= l < m <= n");
  const RadialFunction tm = radial_m_hessian(w, n, m);
  double res = 0.0;
  if (l == 0) {
    for (int i = 0; i < w.size() - 1; ++i) res = std::max(res, std::abs(tm[i] - 1.0));
  } else {
    const RadialFunction tl = radial_m_hessian(w, n, l);
    for (int i = 0; i < w.size() - 1; ++i) res = std::max(res, std::abs(tm[i] - tl[i]));
  }
  return res;
}

double quotient_solution_residual(const GridFunction2D& w, int m, int l) {
  require(l >= 0 && l < m && m <= 2, "quotient_solution_residual: need 0 <= l < m <= 2");
  const GridFunction2D tm = m_hessian_field(w, m);
  const GridFunction2D tl =
      (l == 0) ? GridFunction2D(w.grid(), std::vector<double>(w.grid().node_count(), 1.0))
               : m_hessian_field(w, l);
  const PolarGrid& g = w.grid();
  double res = std::abs(tm.node(0) - tl.node(0));
  for (int i = 1; i < g.nr() - 1; ++i)
    for (int j = 0; j < g.ntheta(); ++j) {
      const std::size_t k = g.node_index(i, j);
      res = std::max(res, std::abs(tm.node(k) - tl.node(k)));
    }
  return res;
}

}  // namespace mhess
