#include "mhess/symfunc.hpp"

#include <algorithm>
#include <cmath>

namespace mhess {

std::vector<double> elementary_symmetric(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = std::min(i + 1, n); k >= 1; --k) {
      e[k] += x[i] * e[k - 1];
    }
  }
  return e;
}

double m_trace_from_eigenvalues(std::span<const double> lambda, int m) {
  const int n = static_cast<int>(lambda.size());
  require(m >= 0 && m <= n, "m_trace: order out of range");
  return elementary_symmetric(lambda)[static_cast<std::size_t>(m)];
}

double m_trace(const SymMatrix& s, int m) {
  require(m >= 0 && m <= s.dim(), "m_trace: order out of range");
  if (m == 0) return 1.0;
  const Eigen::VectorXd ev = s.eigenvalues();
  return m_trace_from_eigenvalues(std::span<const double>(ev.data(), ev.size()), m);
}

TraceVector trace_vector(const SymMatrix& s) {
  const Eigen::VectorXd ev = s.eigenvalues();
  TraceVector t;
  t.values = elementary_symmetric(std::span<const double>(ev.data(), ev.size()));
  t.values[0] = 1.0;
  return t;
}

std::vector<double> traces_faddeev_leverrier(const SymMatrix& s,
                                             std::vector<SymMatrix>* gradients) {
  const int n = s.dim();
  const Eigen::MatrixXd& a = s.mat();
  std::vector<double> t(static_cast<std::size_t>(n) + 1, 0.0);
  t[0] = 1.0;
  if (gradients) gradients->clear();

  // G_1 = I, T_k = tr(A G_k)/k, G_{k+1} = T_k I - A G_k.
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    if (gradients) gradients->push_back(SymMatrix(g));
    t[static_cast<std::size_t>(k)] = (a * g).trace() / k;
    if (k < n) g = t[static_cast<std::size_t>(k)] * Eigen::MatrixXd::Identity(n, n) - a * g;
  }
  return t;
}

SymMatrix m_trace_gradient(const SymMatrix& s, int m) {
  const int n = s.dim();
  require(m >= 0 && m <= n, "m_trace_gradient: order out of range");
  if (m == 0) return SymMatrix(n);  // T_0 is constant
  std::vector<SymMatrix> grads;
  traces_faddeev_leverrier(s, &grads);
  return grads[static_cast<std::size_t>(m - 1)];
}

double deleted_trace(const SymMatrix& s, int m, int i) {
  const int n = s.dim();
  require(m >= 1 && m <= n, "deleted_trace: order out of range");
  require(i >= 0 && i < n, "deleted_trace: index out of range");
  if (m == 1) return 1.0;  // one-trace of the deleted matrix at order 0
  Eigen::MatrixXd sub(n - 1, n - 1);
  for (int r = 0, rr = 0; r < n; ++r) {
    if (r == i) continue;
    for (int c = 0, cc = 0; c < n; ++c) {
      if (c == i) continue;
      sub(rr, cc) = s(r, c);
      ++cc;
    }
    ++rr;
  }
  if (n - 1 == 1) {
    // 1x1 submatrix: e_{m-1} of a single value
    return (m - 1 == 0) ? 1.0 : ((m - 1 == 1) ? sub(0, 0) : 0.0);
  }
  return m_trace(SymMatrix(sub), m - 1);
}

double cone_threshold(const SymMatrix& s, int m) {
  return 1e-12 * std::pow(std::max(1.0, s.max_abs()), m);
}

ConeVerdict cone_membership(const SymMatrix& s, int m) {
  require(m >= 1 && m <= s.dim(), "cone_membership: order out of range");
  const double tau = cone_threshold(s, m);
  const TraceVector t = trace_vector(s);
  ConeVerdict v;
  v.m = m;
  v.member = true;
  v.margin = t[1];
  for (int p = 1; p <= m; ++p) {
    v.margin = std::min(v.margin, t[p]);
    if (t[p] <= tau && !v.first_failure) {
      v.first_failure = p;
      v.member = false;
    }
  }
  return v;
}

double quotient(const SymMatrix& s, int m, int l) {
  const int n = s.dim();
  require(l >= 0 && l < m && m <= n, "quotient: need 0 <= l < m <= n");
  if (!cone_membership(s, m).member)
    throw std::domain_error("quotient: matrix is not in the cone K_m");
  const TraceVector t = trace_vector(s);
  return t[m] / t[l];
}

SymMatrix quotient_gradient(const SymMatrix& s, int m, int l) {
  const int n = s.dim();
  require(l >= 0 && l < m && m <= n, "quotient_gradient: need 0 <= l < m <= n");
  if (!cone_membership(s, m).member)
    throw std::domain_error("quotient_gradient: matrix is not in the cone K_m");
  std::vector<SymMatrix> grads;
  const std::vector<double> t = traces_faddeev_leverrier(s, &grads);
  const SymMatrix& gm = grads[static_cast<std::size_t>(m - 1)];
  if (l == 0) return gm;  // T_0 gradient vanishes
  const SymMatrix& gl = grads[static_cast<std::size_t>(l - 1)];
  const double tl = t[static_cast<std::size_t>(l)];
  const double tm = t[static_cast<std::size_t>(m)];
  Eigen::MatrixXd out = (gm.mat() * tl - tm * gl.mat()) / (tl * tl);
  return SymMatrix(out);
}

double maclaurin_margin(const SymMatrix& s, int l, int m) {
  const int n = s.dim();
  require(l >= 1 && l < m && m <= n, "maclaurin_margin: need 1 <= l < m <= n");
  if (!cone_membership(s, m).member)
    throw std::domain_error("maclaurin_margin: matrix is not in the cone K_m");
  const TraceVector t = trace_vector(s);
  const double a = std::pow(t[l] / binomial(n, l), 1.0 / l);
  const double b = std::pow(t[m] / binomial(n, m), 1.0 / m);
  return a - b;
}

double monotonicity_margin(const SymMatrix& s, const SymMatrix& s0, int m, int l) {
  const int n = s.dim();
  require(s0.dim() == n, "monotonicity_margin: dimension mismatch");
  require(l >= 0 && l < m && m <= n, "monotonicity_margin: need 0 <= l < m <= n");
  const Eigen::VectorXd ev0 = s0.eigenvalues();
  const double tol = 1e-12 * std::max(1.0, s0.max_abs());
  require(ev0.minCoeff() >= -tol, "monotonicity_margin: S0 must be positive semidefinite");
  require(s0.max_abs() > 0.0, "monotonicity_margin: S0 must be nonzero");
  if (!cone_membership(s, m).member)
    throw std::domain_error("monotonicity_margin: matrix is not in the cone K_m");

  const TraceVector ta = trace_vector(s);
  const TraceVector tb = trace_vector(s + s0);
  require(tb[l] > 0.0, "monotonicity_margin: shifted matrix has T_l <= 0");
  return tb[m] / tb[l] - ta[m] / ta[l];
}

}  // namespace mhess
