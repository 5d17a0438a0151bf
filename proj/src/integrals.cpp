#include "mhess/integrals.hpp"

#include <cmath>

#include "mhess/solver.hpp"

namespace mhess {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

namespace {

// Fourth-order composite weights on n_nodes uniform nodes with spacing h:
// composite Simpson when the interval count is even, otherwise Simpson plus
// a trailing 3/8 panel.
std::vector<double> composite_weights_1d(int n_nodes, double h) {
  require(n_nodes >= 5, "quadrature: need at least 5 nodes");
  std::vector<double> w(static_cast<std::size_t>(n_nodes), 0.0);
  const int intervals = n_nodes - 1;
  int simpson_end = intervals;  // node index where the Simpson part stops
  if (intervals % 2 != 0) simpson_end = intervals - 3;
  for (int k = 0; k + 2 <= simpson_end; k += 2) {
    w[static_cast<std::size_t>(k)] += h / 3.0;
    w[static_cast<std::size_t>(k + 1)] += 4.0 * h / 3.0;
    w[static_cast<std::size_t>(k + 2)] += h / 3.0;
  }
  if (simpson_end != intervals) {
    const double c = 3.0 * h / 8.0;
    w[static_cast<std::size_t>(simpson_end)] += c;
    w[static_cast<std::size_t>(simpson_end + 1)] += 3.0 * c;
    w[static_cast<std::size_t>(simpson_end + 2)] += 3.0 * c;
    w[static_cast<std::size_t>(simpson_end + 3)] += c;
  }
  return w;
}

void require_zero_boundary_radial(const RadialFunction& u) {
  require(std::abs(u.boundary_value()) <= 1e-12 * std::max(1.0, u.max_abs()),
          "hessian_integral: boundary data must vanish");
}

void require_zero_boundary_grid(const GridFunction2D& u) {
  require(u.boundary_max_abs() <= 1e-12 * std::max(1.0, u.max_abs()),
          "hessian_integral: boundary data must vanish");
}

}  // namespace

QuadratureRule QuadratureRule::radial_shell(int n, double radius, int n_nodes) {
  require(n >= 2 && n <= 8, "quadrature: dimension must be in [2, 8]");
  require(radius > 0.0, "quadrature: radius must be positive");
  const double h = radius / (n_nodes - 1);
  std::vector<double> w = composite_weights_1d(n_nodes, h);
  const double area = unit_sphere_area(n);
  for (int i = 0; i < n_nodes; ++i)
    w[static_cast<std::size_t>(i)] *= area * std::pow(h * i, n - 1);
  return QuadratureRule(Kind::RadialShell, std::move(w));
}

QuadratureRule QuadratureRule::polar_tensor(const PolarGrid& grid) {
  const auto sc = grid.domain().scales();
  const double jac = sc[0] * sc[1];
  std::vector<double> w1d = composite_weights_1d(grid.nr(), grid.dr());
  std::vector<double> w(grid.node_count(), 0.0);
  const double dth = grid.dtheta();
  for (int i = 1; i < grid.nr(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j)
      w[grid.node_index(i, j)] = w1d[static_cast<std::size_t>(i)] * grid.rho(i) * dth * jac;
  return QuadratureRule(Kind::PolarTensor, std::move(w));
}

double QuadratureRule::volume() const { return pairwise_sum(weights_); }

double QuadratureRule::integrate(std::span<const double> values) const {
  require(values.size() == weights_.size(), "quadrature: value count mismatch");
  std::vector<double> prod(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) prod[k] = weights_[k] * values[k];
  return pairwise_sum(prod);
}

double hessian_integral(const RadialFunction& u, int n, int m) {
  require(m >= 0 && m <= n, "hessian_integral: order out of range");
  require_zero_boundary_radial(u);
  const QuadratureRule q = QuadratureRule::radial_shell(n, u.radius(), u.size());
  std::vector<double> integrand(static_cast<std::size_t>(u.size()));
  if (m == 0) {
    for (int i = 0; i < u.size(); ++i) integrand[static_cast<std::size_t>(i)] = -u[i];
  } else {
    const RadialFunction tm = radial_m_hessian(u, n, m);
    for (int i = 0; i < u.size(); ++i) integrand[static_cast<std::size_t>(i)] = -u[i] * tm[i];
  }
  return q.integrate(integrand);
}

double hessian_integral(const GridFunction2D& u, int m) {
  require(m >= 0 && m <= 2, "hessian_integral: order out of range");
  require_zero_boundary_grid(u);
  const QuadratureRule q = QuadratureRule::polar_tensor(u.grid());
  std::vector<double> integrand(u.grid().node_count());
  if (m == 0) {
    for (std::size_t k = 0; k < integrand.size(); ++k) integrand[k] = -u.node(k);
  } else {
    const GridFunction2D tm = m_hessian_field(u, m);
    for (std::size_t k = 0; k < integrand.size(); ++k) integrand[k] = -u.node(k) * tm.node(k);
  }
  return q.integrate(integrand);
}

namespace {

double functional_J_impl(double im, double il, int m, int l) {
  require(l >= 0 && l < m, "functional_J: need 0 <= l < m");
  if (il <= 0.0) throw std::domain_error("functional_J: I_l[u] must be positive");
  return std::pow(im, 1.0 / (m + 1)) / std::pow(il, 1.0 / (l + 1));
}

}  // namespace

double functional_J(const RadialFunction& u, int n, int m, int l) {
  return functional_J_impl(hessian_integral(u, n, m), hessian_integral(u, n, l), m, l);
}

double functional_J(const GridFunction2D& u, int m, int l) {
  return functional_J_impl(hessian_integral(u, m), hessian_integral(u, l), m, l);
}

double integral(const RadialFunction& u, int n) {
  const QuadratureRule q = QuadratureRule::radial_shell(n, u.radius(), u.size());
  return q.integrate(u.values());
}

double integral(const GridFunction2D& u) {
  const QuadratureRule q = QuadratureRule::polar_tensor(u.grid());
  return q.integrate(u.values());
}

double integral_product(const RadialFunction& u, const RadialFunction& field, int n) {
  require(u.size() == field.size(), "integral_product: grid mismatch");
  const QuadratureRule q = QuadratureRule::radial_shell(n, u.radius(), u.size());
  std::vector<double> prod(static_cast<std::size_t>(u.size()));
  for (int i = 0; i < u.size(); ++i) prod[static_cast<std::size_t>(i)] = u[i] * field[i];
  return q.integrate(prod);
}

double integral_product(const GridFunction2D& u, const GridFunction2D& field) {
  require(u.grid() == field.grid(), "integral_product: grid mismatch");
  const QuadratureRule q = QuadratureRule::polar_tensor(u.grid());
  std::vector<double> prod(u.grid().node_count());
  for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = u.node(k) * field.node(k);
  return q.integrate(prod);
}

double weighted_inner_product(const RadialFunction& u, const RadialFunction& v, int p,
                              const RadialFunction& w, int n) {
  require(p >= 0 && p <= n, "weighted_inner_product: order out of range");
  require(u.size() == v.size() && u.size() == w.size(), "weighted_inner_product: grid mismatch");
  if (p == 0) return 0.0;
  const QuadratureRule q = QuadratureRule::radial_shell(n, u.radius(), u.size());
  const std::vector<double> du = u.d1();
  const std::vector<double> dv = v.d1();
  const std::vector<double> qw = w.dq();
  const double c = binomial(n - 1, p - 1);
  std::vector<double> integrand(static_cast<std::size_t>(u.size()));
  for (int i = 0; i < u.size(); ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    integrand[k] = c * std::pow(qw[k], p - 1) * du[k] * dv[k];
  }
  return q.integrate(integrand);
}

double weighted_inner_product(const GridFunction2D& u, const GridFunction2D& v, int p,
                              const GridFunction2D& w) {
  require(p >= 0 && p <= 2, "weighted_inner_product: order out of range for n = 2");
  require(u.grid() == v.grid() && u.grid() == w.grid(), "weighted_inner_product: grid mismatch");
  if (p == 0) return 0.0;
  const QuadratureRule q = QuadratureRule::polar_tensor(u.grid());
  const GradientField2D gu = grid_gradient(u);
  const GradientField2D gv = grid_gradient(v);
  const std::size_t n = u.grid().node_count();
  std::vector<double> integrand(n);
  if (p == 1) {
    for (std::size_t k = 0; k < n; ++k)
      integrand[k] = gu.x[k] * gv.x[k] + gu.y[k] * gv.y[k];
  } else {
    const HessianField2D hw = grid_hessian(w);
    for (std::size_t k = 0; k < n; ++k) {
      const double a11 = hw.yy[k], a12 = -hw.xy[k], a22 = hw.xx[k];
      integrand[k] = gu.x[k] * (a11 * gv.x[k] + a12 * gv.y[k]) +
                     gu.y[k] * (a12 * gv.x[k] + a22 * gv.y[k]);
    }
  }
  return q.integrate(integrand);
}

namespace {

template <typename F>
FirstVariation first_variation_impl(F&& value_at, double identity, double eps) {
  const double ip = value_at(eps), im = value_at(-eps);
  const double ip2 = value_at(0.5 * eps), im2 = value_at(-0.5 * eps);
  FirstVariation fv;
  fv.direct = (ip - im) / (2.0 * eps);
  fv.direct_refined = (ip2 - im2) / eps;
  fv.identity = identity;
  return fv;
}

}  // namespace

FirstVariation first_variation_I(const RadialFunction& u, const RadialFunction& h, int n,
                                 int m, double eps) {
  require(std::abs(h.boundary_value()) <= 1e-12 * std::max(1.0, h.max_abs()),
          "first_variation_I: direction must vanish on the boundary");
  const RadialFunction tm = radial_m_hessian(u, n, m);
  const double identity = -(m + 1) * integral_product(h, tm, n);
  auto value_at = [&](double t) { return hessian_integral(u + t * h, n, m); };
  return first_variation_impl(value_at, identity, eps);
}

FirstVariation first_variation_I(const GridFunction2D& u, const GridFunction2D& h, int m,
                                 double eps) {
  require(h.boundary_max_abs() <= 1e-12 * std::max(1.0, h.max_abs()),
          "first_variation_I: direction must vanish on the boundary");
  const GridFunction2D tm = m_hessian_field(u, m);
  const double identity = -(m + 1) * integral_product(h, tm);
  auto value_at = [&](double t) { return hessian_integral(u + t * h, m); };
  return first_variation_impl(value_at, identity, eps);
}

double second_variation_I(const RadialFunction& u, const RadialFunction& h, int n, int m) {
  return (m + 1) * weighted_inner_product(h, h, m, u, n);
}

double second_variation_I(const GridFunction2D& u, const GridFunction2D& h, int m) {
  return (m + 1) * weighted_inner_product(h, h, m, u);
}

double second_variation_I_numeric(const RadialFunction& u, const RadialFunction& h, int n,
                                  int m, double eps) {
  const double ip = hessian_integral(u + eps * h, n, m);
  const double i0 = hessian_integral(u, n, m);
  const double im = hessian_integral(u + (-eps) * h, n, m);
  return (ip - 2.0 * i0 + im) / (eps * eps);
}

double second_variation_I_numeric(const GridFunction2D& u, const GridFunction2D& h, int m,
                                  double eps) {
  const double ip = hessian_integral(u + eps * h, m);
  const double i0 = hessian_integral(u, m);
  const double im = hessian_integral(u + (-eps) * h, m);
  return (ip - 2.0 * i0 + im) / (eps * eps);
}

double second_variation_J(const RadialFunction& w, const RadialFunction& h, int n, int m,
                          int l) {
  require(l >= 0 && l < m && m <= n, "second_variation_J: need 0 <= l < m <= n");
  const double res = quotient_solution_residual(w, n, m, l);
  require(res <= 1e-5, "second_variation_J: w does not solve the quotient equation");
  const double im = hessian_integral(w, n, m);
  const double j = functional_J(w, n, m, l);
  const RadialFunction tm = radial_m_hessian(w, n, m);
  const double a = integral_product(h, tm, n);
  const double qm = weighted_inner_product(h, h, m, w, n);
  const double ql = weighted_inner_product(h, h, l, w, n);
  return (j / im) * ((double(l - m) / im) * a * a + (qm - ql));
}

double second_variation_J(const GridFunction2D& w, const GridFunction2D& h, int m, int l) {
  require(l >= 0 && l < m && m <= 2, "second_variation_J: need 0 <= l < m <= 2");
  const double res = quotient_solution_residual(w, m, l);
  require(res <= 1e-5, "second_variation_J: w does not solve the quotient equation");
  const double im = hessian_integral(w, m);
  const double j = functional_J(w, m, l);
  const GridFunction2D tm = m_hessian_field(w, m);
  const double a = integral_product(h, tm);
  const double qm = weighted_inner_product(h, h, m, w);
  const double ql = weighted_inner_product(h, h, l, w);
  return (j / im) * ((double(l - m) / im) * a * a + (qm - ql));
}

}  // namespace mhess
