#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mhess/admissibility.hpp"
#include "mhess/domain.hpp"
#include "mhess/grid.hpp"
#include "mhess/radial.hpp"

namespace mhess {

// Construction-time refusal: the boundary fails the (m-1)-convexity gate,
// so the admissible set over the domain is empty and no solve is attempted.
class ConvexityGateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg), last_residual(residual) {}
  double last_residual = 0.0;
};

// An iterate left the admissibility cone and damping could not recover.
class ConeExitError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

struct NewtonOptions {
  double tolerance = 0.0;        // residual_inf target; 0 = solver default
                                 // (1e-9 radial, 1e-7 grid)
  int max_iterations = 100;
  int max_halvings = 30;
  double cone_margin = 1e-10;    // safeguard threshold for iterates
  double initial_scale = 1.0;    // multiplies the default starting iterate
};

// Dirichlet problem T_m[w] = psi T_l[w], zero boundary data. l = 0 is the
// pure m-Hessian equation. Construction enforces psi > 0 and the boundary
// convexity gate.
struct DirichletProblem {
  DirichletProblem(Domain domain_, int n_, int m_, int l_,
                   std::function<double(double, double)> psi_);

  Domain domain;
  int n;
  int m;
  int l;
  std::function<double(double, double)> psi;  // evaluated at physical (x, y)
};

struct RadialSolution {
  RadialFunction w;
  double residual_inf = 0.0;
  int iterations = 0;
  AdmissibilityReport admissibility;
  std::string branch = "nonpositive";
  std::vector<double> residual_history;  // residual_inf after each accepted step
};

struct GridSolution {
  GridFunction2D w;
  double residual_inf = 0.0;
  int iterations = 0;
  AdmissibilityReport admissibility;
  std::string branch = "nonpositive";
  std::vector<double> residual_history;  // residual_inf after each accepted step
};

// Closed-form solution of T_m[w] = T_l[w] on the ball: w = a (r^2 - R^2)/2
// with a = (C(n,l)/C(n,m))^{1/(m-l)}. Returns the coefficient and the
// sampled profile.
std::pair<double, RadialFunction> solve_radial_quadratic(int n, int m, int l, double radius,
                                                         int n_nodes);

// Damped Newton for the radial equation T_m[w] = psi(r) with w'(0) = 0,
// w(R) = 0, on the nonpositive branch.
RadialSolution solve_radial_ode(int n, int m, const std::function<double(double)>& psi,
                                double radius, int n_nodes,
                                const NewtonOptions& opts = {});

// Damped Newton for T_m[w] - psi T_l[w] = 0 on a 2-D polar grid with zero
// Dirichlet data. Disc domains are the supported configuration; ellipse
// domains run through the same machinery but are experimental.
GridSolution solve_grid_newton(const DirichletProblem& problem, int nr, int ntheta,
                               const NewtonOptions& opts = {});

// Max norm over checked nodes of T_m[w] - T_l[w]; small iff w solves the
// unit quotient equation.
double quotient_solution_residual(const RadialFunction& w, int n, int m, int l);
double quotient_solution_residual(const GridFunction2D& w, int m, int l);

}  // namespace mhess
