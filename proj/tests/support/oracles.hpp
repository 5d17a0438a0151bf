#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "mhess/symmatrix.hpp"

namespace mhess::oracle {

// Sum of all m x m principal minors by direct subset enumeration.
inline double brute_force_m_trace(const SymMatrix& s, int m) {
  const int n = s.dim();
  if (m == 0) return 1.0;
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    Eigen::MatrixXd sub(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) sub(r, c) = s(idx[size_t(r)], idx[size_t(c)]);
    total += sub.determinant();
  }
  return total;
}

// Natural magnitude of T_m for error scaling: e_m of |eigenvalues|.
inline double m_trace_scale(const SymMatrix& s, int m) {
  Eigen::VectorXd ev = s.eigenvalues();
  std::vector<double> a(static_cast<size_t>(ev.size()));
  for (long i = 0; i < ev.size(); ++i) a[size_t(i)] = std::abs(ev[i]);
  std::vector<double> e(a.size() + 1, 0.0);
  e[0] = 1.0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = std::min(i + 1, a.size()); k >= 1; --k) e[k] += a[i] * e[k - 1];
  return e[size_t(m)];
}

// Central finite difference of f under the symmetric perturbation of entry
// (i,j): returns d/dt f(S + t (E_ij + E_ji)) at t = 0.
inline double fd_symmetric_entry(const SymMatrix& s, int i, int j, double h,
                                 const std::function<double(const SymMatrix&)>& f) {
  Eigen::MatrixXd p = s.mat();
  p(i, j) += h;
  p(j, i) = p(i, j);
  if (i == j) p(i, i) = s(i, i) + h;
  const double fp = f(SymMatrix(p));
  Eigen::MatrixXd q = s.mat();
  q(i, j) -= h;
  q(j, i) = q(i, j);
  if (i == j) q(i, i) = s(i, i) - h;
  const double fm = f(SymMatrix(q));
  return (fp - fm) / (2.0 * h);
}

// Random orthogonal matrix from the QR factorization of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  return q;
}

// Cartesian Hessian of phi(x) by central differences, summed over principal
// minors; used to validate the radial synthesis.
inline double cartesian_minor_sum(const std::function<double(const std::vector<double>&)>& phi,
                                  const std::vector<double>& x, int m, double h) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd hess(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      std::vector<double> p = x;
      if (i == j) {
        p[size_t(i)] = x[size_t(i)] + h;
        const double fp = phi(p);
        p[size_t(i)] = x[size_t(i)] - h;
        const double fm = phi(p);
        hess(i, i) = (fp - 2.0 * phi(x) + fm) / (h * h);
      } else {
        p = x;
        p[size_t(i)] += h;
        p[size_t(j)] += h;
        const double fpp = phi(p);
        p = x;
        p[size_t(i)] += h;
        p[size_t(j)] -= h;
        const double fpm = phi(p);
        p = x;
        p[size_t(i)] -= h;
        p[size_t(j)] += h;
        const double fmp = phi(p);
        p = x;
        p[size_t(i)] -= h;
        p[size_t(j)] -= h;
        const double fmm = phi(p);
        hess(i, j) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        hess(j, i) = hess(i, j);
      }
    }
  }
  return brute_force_m_trace(SymMatrix(hess), m);
}

}  // namespace mhess::oracle
