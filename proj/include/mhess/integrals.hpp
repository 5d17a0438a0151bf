#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhess/grid.hpp"
#include "mhess/radial.hpp"

namespace mhess {

// Deterministic pairwise summation (fixed reduction order).
double pairwise_sum(std::span<const double> x);

// Volume quadrature over node values. Radial-shell rules carry the
// r^{n-1} surface Jacobian, polar-tensor rules the rho (times ellipse map)
// Jacobian. The 1-D backbone is a fourth-order composite rule.
class QuadratureRule {
 public:
  enum class Kind { RadialShell, PolarTensor };

  static QuadratureRule radial_shell(int n, double radius, int n_nodes);
  static QuadratureRule polar_tensor(const PolarGrid& grid);

  Kind kind() const { return kind_; }
  const std::vector<double>& weights() const { return weights_; }
  double volume() const;
  double integrate(std::span<const double> values) const;

 private:
  QuadratureRule(Kind k, std::vector<double> w) : kind_(k), weights_(std::move(w)) {}
  Kind kind_;
  std::vector<double> weights_;
};

// Named functional evaluation for reporting.
struct FunctionalValue {
  std::string name;
  double value = 0.0;
  int m = 0;
  std::optional<int> l;
  std::string grid_spec;
  bool admissible_input = true;
};

// I_m[u] = integral of (-u) T_m[u]; requires vanishing boundary data.
double hessian_integral(const RadialFunction& u, int n, int m);
double hessian_integral(const GridFunction2D& u, int m);

// J_{m,l}[u] = I_m[u]^{1/(m+1)} / I_l[u]^{1/(l+1)}; scale invariant.
double functional_J(const RadialFunction& u, int n, int m, int l);
double functional_J(const GridFunction2D& u, int m, int l);

// Plain volume integrals.
double integral(const RadialFunction& u, int n);
double integral(const GridFunction2D& u);
double integral_product(const RadialFunction& u, const RadialFunction& field, int n);
double integral_product(const GridFunction2D& u, const GridFunction2D& field);

// <u,v>_p = integral of T_p^{ij}[w] u_i v_j; symmetric bilinear, positive
// definite for admissible weights w of order >= p. p = 0 gives 0.
double weighted_inner_product(const RadialFunction& u, const RadialFunction& v, int p,
                              const RadialFunction& w, int n);
double weighted_inner_product(const GridFunction2D& u, const GridFunction2D& v, int p,
                              const GridFunction2D& w);

// d/dt I_m[u + t h] at t = 0, evaluated two ways: symmetric numeric
// differencing (with a refined half-step value) and the closed form
// -(m+1) integral of h T_m[u].
struct FirstVariation {
  double direct = 0.0;
  double direct_refined = 0.0;  // half step, for the Richardson check
  double identity = 0.0;
};
FirstVariation first_variation_I(const RadialFunction& u, const RadialFunction& h, int n,
                                 int m, double eps = 1e-4);
FirstVariation first_variation_I(const GridFunction2D& u, const GridFunction2D& h, int m,
                                 double eps = 1e-4);

// (m+1) integral of T_m^{ij}[u] h_i h_j.
double second_variation_I(const RadialFunction& u, const RadialFunction& h, int n, int m);
double second_variation_I(const GridFunction2D& u, const GridFunction2D& h, int m);

// Numeric d^2/dt^2 I_m[u + t h] at t = 0.
double second_variation_I_numeric(const RadialFunction& u, const RadialFunction& h, int n,
                                  int m, double eps = 1e-4);
double second_variation_I_numeric(const GridFunction2D& u, const GridFunction2D& h, int m,
                                  double eps = 1e-4);

// Second variation of J_{m,l} at a solution w of T_m[w] = T_l[w] with zero
// boundary data; nonnegative over admissible directions since w is the
// minimizer. Rejects w whose equation residual is too large.
double second_variation_J(const RadialFunction& w, const RadialFunction& h, int n, int m,
                          int l);
double second_variation_J(const GridFunction2D& w, const GridFunction2D& h, int m, int l);

}  // namespace mhess
