#pragma once

#include <functional>
#include <vector>

#include "mhess/common.hpp"

namespace mhess {

// Radial profile w(r) on the uniform grid r_i = i R/(N-1), i = 0..N-1.
// Profiles represent smooth radial functions of |x|, so w'(0) = 0.
class RadialFunction {
 public:
  static constexpr int kMinNodes = 9;

  RadialFunction(double radius, std::vector<double> values);

  static RadialFunction sample(double radius, int n_nodes,
                               const std::function<double(double)>& f);

  // a (r^2 - R^2) / 2
  static RadialFunction quadratic(double a, double radius, int n_nodes);

  double radius() const { return radius_; }
  int size() const { return static_cast<int>(values_.size()); }
  double spacing() const { return radius_ / (size() - 1); }
  double r(int i) const { return spacing() * i; }

  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

  double max_abs() const;
  double boundary_value() const { return values_.back(); }

  // First derivative w'(r_i); w'(0) = 0, one-sided at r = R, O(h^2).
  std::vector<double> d1() const;
  // Second derivative w''(r_i); symmetric ghost at the pole, one-sided at
  // r = R, O(h^2).
  std::vector<double> d2() const;
  // w'(r)/r with the pole limit w''(0).
  std::vector<double> dq() const;

  RadialFunction& operator+=(const RadialFunction& o);
  RadialFunction& operator*=(double c);
  friend RadialFunction operator+(RadialFunction a, const RadialFunction& b) { return a += b; }
  friend RadialFunction operator*(double c, RadialFunction a) { return a *= c; }

 private:
  double radius_;
  std::vector<double> values_;
};

// Pointwise m-Hessian of the radial function w(|x|) in dimension n. The
// Hessian of a radial function has eigenvalues w'' (radial direction) and
// w'/r with multiplicity n-1, so
//   T_m[w](r) = C(n-1,m-1) w'' (w'/r)^{m-1} + C(n-1,m) (w'/r)^m,
// with w'/r -> w''(0) at the pole.
RadialFunction radial_m_hessian(const RadialFunction& w, int n, int m);

// Max norm over interior nodes (0 < r < R) of
//   T_m[w] - (1/m) div( flux ),   flux = w' T_m^{rr}-coefficient e_r,
// where the divergence is applied to the already-discrete radial flux.
// Vanishes to discretization order for smooth w.
double divergence_identity_residual(const RadialFunction& w, int n, int m);

}  // namespace mhess
