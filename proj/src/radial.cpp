#include "mhess/radial.hpp"

#include <cmath>

namespace mhess {

RadialFunction::RadialFunction(double radius, std::vector<double> values)
    : radius_(radius), values_(std::move(values)) {
  require(radius_ > 0.0, "RadialFunction: radius must be positive");
  require(static_cast<int>(values_.size()) >= kMinNodes,
          "RadialFunction: need at least 9 nodes");
  for (double v : values_)
    require(std::isfinite(v), "RadialFunction: values must be finite");
}

RadialFunction RadialFunction::sample(double radius, int n_nodes,
                                      const std::function<double(double)>& f) {
  require(n_nodes >= kMinNodes, "RadialFunction: need at least 9 nodes");
  std::vector<double> v(static_cast<std::size_t>(n_nodes));
  const double h = radius / (n_nodes - 1);
  for (int i = 0; i < n_nodes; ++i) v[static_cast<std::size_t>(i)] = f(h * i);
  return RadialFunction(radius, std::move(v));
}

RadialFunction RadialFunction::quadratic(double a, double radius, int n_nodes) {
  return sample(radius, n_nodes,
                [a, radius](double r) { return a * (r * r - radius * radius) / 2.0; });
}

double RadialFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> RadialFunction::d1() const {
  const int n = size();
  const double h = spacing();
  std::vector<double> out(static_cast<std::size_t>(n));
  out[0] = 0.0;  // radial symmetry
  for (int i = 1; i < n - 1; ++i)
    out[static_cast<std::size_t>(i)] = (values_[i + 1] - values_[i - 1]) / (2.0 * h);
  // third-order one-sided close, so differencing across the boundary value
  // stays second order
  out[static_cast<std::size_t>(n - 1)] =
      (11.0 * values_[n - 1] - 18.0 * values_[n - 2] + 9.0 * values_[n - 3] -
       2.0 * values_[n - 4]) /
      (6.0 * h);
  return out;
}

std::vector<double> RadialFunction::d2() const {
  const int n = size();
  const double h = spacing();
  std::vector<double> out(static_cast<std::size_t>(n));
  out[0] = 2.0 * (values_[1] - values_[0]) / (h * h);  // ghost w_{-1} = w_1
  for (int i = 1; i < n - 1; ++i)
    out[static_cast<std::size_t>(i)] =
        (values_[i + 1] - 2.0 * values_[i] + values_[i - 1]) / (h * h);
  out[static_cast<std::size_t>(n - 1)] =
      (35.0 * values_[n - 1] - 104.0 * values_[n - 2] + 114.0 * values_[n - 3] -
       56.0 * values_[n - 4] + 11.0 * values_[n - 5]) /
      (12.0 * h * h);
  return out;
}

std::vector<double> RadialFunction::dq() const {
  const int n = size();
  std::vector<double> out = d1();
  const std::vector<double> w2 = d2();
  out[0] = w2[0];
  for (int i = 1; i < n; ++i) out[static_cast<std::size_t>(i)] /= r(i);
  return out;
}

RadialFunction& RadialFunction::operator+=(const RadialFunction& o) {
  require(o.size() == size() && o.radius() == radius(),
          "RadialFunction: grid mismatch");
  for (int i = 0; i < size(); ++i) values_[static_cast<std::size_t>(i)] += o[i];
  return *this;
}

RadialFunction& RadialFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

RadialFunction radial_m_hessian(const RadialFunction& w, int n, int m) {
  require(n >= 2 && n <= 8, "radial_m_hessian: dimension must be in [2, 8]");
  require(m >= 1 && m <= n, "radial_m_hessian: order out of range");
  const std::vector<double> w2 = w.d2();
  const std::vector<double> q = w.dq();
  const double c1 = binomial(n - 1, m - 1);
  const double c2 = binomial(n - 1, m);
  std::vector<double> out(static_cast<std::size_t>(w.size()));
  for (int i = 0; i < w.size(); ++i) {
    const double qi = q[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] =
        c1 * w2[static_cast<std::size_t>(i)] * std::pow(qi, m - 1) + c2 * std::pow(qi, m);
  }
  return RadialFunction(w.radius(), std::move(out));
}

double divergence_identity_residual(const RadialFunction& w, int n, int m) {
  require(m >= 1 && m <= n, "divergence_identity_residual: order out of range");
  const RadialFunction tm = radial_m_hessian(w, n, m);
  const std::vector<double> d1 = w.d1();
  const std::vector<double> q = w.dq();
  const int nn = w.size();
  const double h = w.spacing();
  const double c1 = binomial(n - 1, m - 1);

  // radial flux f = C(n-1,m-1) w' (w'/r)^{m-1}; its divergence is evaluated
  // as f' + (n-1) f/r so the geometric factor never amplifies differencing
  // error near the pole
  std::vector<double> f(static_cast<std::size_t>(nn));
  for (int i = 0; i < nn; ++i) {
    f[static_cast<std::size_t>(i)] = c1 * d1[static_cast<std::size_t>(i)] *
                                     std::pow(q[static_cast<std::size_t>(i)], m - 1);
  }

  // the outermost interior node is skipped: its centered flux difference
  // straddles the one-sided boundary value, which costs an order
  double res = 0.0;
  for (int i = 1; i < nn - 2; ++i) {
    const double fprime =
        (f[static_cast<std::size_t>(i + 1)] - f[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
    const double div = fprime + (n - 1) * f[static_cast<std::size_t>(i)] / w.r(i);
    res = std::max(res, std::abs(tm[i] - div / m));
  }
  return res;
}

}  // namespace mhess
