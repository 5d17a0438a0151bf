#include "mhess/admissibility.hpp"

#include <cmath>
#include <limits>

#include "mhess/symfunc.hpp"

namespace mhess {

namespace {

struct Worst {
  double margin = std::numeric_limits<double>::infinity();
  std::ptrdiff_t node = -1;
  int order = 0;
  double value = 0.0;
};

// Checks T_p > tau for p = 1..m at one node given the Hessian eigenvalues.
void check_node(std::span<const double> lambda, int m, std::ptrdiff_t node, Worst* worst) {
  double scale = 1.0;
  for (double l : lambda) scale = std::max(scale, std::abs(l));
  const double tau = 1e-12 * std::pow(scale, m);
  const std::vector<double> e = elementary_symmetric(lambda);
  for (int p = 1; p <= m; ++p) {
    const double margin = e[static_cast<std::size_t>(p)] - tau;
    if (margin < worst->margin) {
      worst->margin = margin;
      worst->node = node;
      worst->order = p;
      worst->value = e[static_cast<std::size_t>(p)];
    }
  }
}

AdmissibilityReport finish(Worst worst, int m, bool boundary_zero, double max_u,
                           double sign_tol, std::ptrdiff_t max_u_node) {
  AdmissibilityReport rep;
  rep.m = m;
  rep.margin = worst.margin;
  rep.worst_node = worst.node;
  rep.worst_order = worst.order;
  rep.worst_value = worst.value;
  rep.admissible = worst.margin > 0.0;
  rep.sign_checked = boundary_zero;
  if (boundary_zero && max_u > sign_tol) {
    rep.admissible = false;
    rep.worst_order = 0;
    rep.worst_value = max_u;
    rep.worst_node = max_u_node;
  }
  return rep;
}

}  // namespace

AdmissibilityReport grid_admissibility(const GridFunction2D& u, int m) {
  require(m >= 1 && m <= 2, "grid_admissibility: order out of range for n = 2");
  const PolarGrid& g = u.grid();
  const HessianField2D h = grid_hessian(u);

  Worst worst;
  auto probe = [&](int i, int j) {
    const std::size_t k = g.node_index(i, j);
    Eigen::Matrix2d hess;
    hess << h.xx[k], h.xy[k], h.xy[k], h.yy[k];
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(hess).eigenvalues();
    const double lambda[2] = {ev[0], ev[1]};
    check_node(std::span<const double>(lambda, 2), m, static_cast<std::ptrdiff_t>(k), &worst);
  };
  probe(0, 0);
  for (int i = 1; i < g.nr() - 1; ++i)
    for (int j = 0; j < g.ntheta(); ++j) probe(i, j);

  const double sign_tol = 1e-12 * std::max(1.0, u.max_abs());
  const bool boundary_zero = u.boundary_max_abs() <= sign_tol;
  double max_u = -std::numeric_limits<double>::infinity();
  std::ptrdiff_t max_node = -1;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (u.node(k) > max_u) {
      max_u = u.node(k);
      max_node = static_cast<std::ptrdiff_t>(k);
    }
  }
  return finish(worst, m, boundary_zero, max_u, sign_tol, max_node);
}

AdmissibilityReport grid_admissibility(const RadialFunction& u, int n, int m) {
  require(n >= 2 && n <= 8, "grid_admissibility: dimension must be in [2, 8]");
  require(m >= 1 && m <= n, "grid_admissibility: order out of range");
  const std::vector<double> w2 = u.d2();
  const std::vector<double> q = u.dq();

  Worst worst;
  std::vector<double> lambda(static_cast<std::size_t>(n));
  for (int i = 0; i < u.size() - 1; ++i) {
    lambda[0] = w2[static_cast<std::size_t>(i)];
    for (int k = 1; k < n; ++k) lambda[static_cast<std::size_t>(k)] = q[static_cast<std::size_t>(i)];
    check_node(lambda, m, i, &worst);
  }

  const double sign_tol = 1e-12 * std::max(1.0, u.max_abs());
  const bool boundary_zero = std::abs(u.boundary_value()) <= sign_tol;
  double max_u = -std::numeric_limits<double>::infinity();
  std::ptrdiff_t max_node = -1;
  for (int i = 0; i < u.size(); ++i) {
    if (u[i] > max_u) {
      max_u = u[i];
      max_node = i;
    }
  }
  return finish(worst, m, boundary_zero, max_u, sign_tol, max_node);
}

}  // namespace mhess
