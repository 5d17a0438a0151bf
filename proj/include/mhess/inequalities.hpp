#pragma once

#include <string>

#include "mhess/grid.hpp"
#include "mhess/integrals.hpp"
#include "mhess/radial.hpp"

namespace mhess {

// Error budget for a verified inequality: discretization plus solver
// residual plus a floor. Calibrated on the closed-form quadratic cases;
// at 128-interval grids the budget stays below 1e-5.
struct ToleranceModel {
  double c1 = 0.15;   // x h^2 (radial spacing)
  double c2 = 10.0;   // x solver residual of the extremal
  double floor = 1e-10;
  double operator()(double h, double residual) const {
    return c1 * h * h + c2 * residual + floor;
  }
};

// One verified inequality instance. The orientation is chosen so that
// margin >= 0 always means the inequality holds.
struct InequalityReport {
  std::string name;  // maclaurin | poincare | isoperimetric | composition |
                     // anpo | zero_l | p2 | dilation | w2
  int m = 0;
  int l = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string orientation;  // "lhs-rhs" or "rhs-lhs"
  double tolerance = 0.0;
  bool pass = false;
  std::string inputs;
};

// A quotient-equation solution bundled with the data the checks need.
struct RadialExtremal {
  RadialFunction w;
  int n;
  int m;
  int l;
  double residual;  // quotient_solution_residual of w
  std::string provenance;
};

struct GridExtremal {
  GridFunction2D w;
  int m;
  int l;
  double residual;
  std::string provenance;
};

// (I_m[u]/I_m[w])^{1/(m+1)} >= (I_l[u]/I_l[w])^{1/(l+1)} for admissible u.
InequalityReport check_poincare(const RadialFunction& u, const RadialExtremal& w,
                                const ToleranceModel& tm = {});
InequalityReport check_poincare(const GridFunction2D& u, const GridExtremal& w,
                                const ToleranceModel& tm = {});

// After normalizing I_l[u] = 1: I_m[u] >= I_m[w]^{(l-m)/(l+1)}.
InequalityReport check_isoperimetric(const RadialFunction& u, const RadialExtremal& w,
                                     const ToleranceModel& tm = {});
InequalityReport check_isoperimetric(const GridFunction2D& u, const GridExtremal& w,
                                     const ToleranceModel& tm = {});

// I_m[w_ml]^{m-l} >= I_m[w_mp]^{((l+1)/(p+1))(m-p)} I_l[w_pl]^{((m+1)/(p+1))(p-l)}.
InequalityReport check_composition(const RadialExtremal& w_ml, const RadialExtremal& w_mp,
                                   const RadialExtremal& w_pl, const ToleranceModel& tm = {});
InequalityReport check_composition(const GridExtremal& w_ml, const GridExtremal& w_mp,
                                   const GridExtremal& w_pl, const ToleranceModel& tm = {});

// ((m-l)/I_m[w]) (int u T_m[w])^2 + <u,u>_l  <=  <u,u>_m  (weight w).
// u needs zero boundary data only.
InequalityReport check_anpo(const RadialFunction& u, const RadialExtremal& w,
                            const ToleranceModel& tm = {});
InequalityReport check_anpo(const GridFunction2D& u, const GridExtremal& w,
                            const ToleranceModel& tm = {});

// m (int u)^2 <= (int -w_m) <u,u>_m for w_m solving T_m[w_m] = 1 (l = 0).
InequalityReport check_zero_l(const RadialFunction& u, const RadialExtremal& w_m,
                              const ToleranceModel& tm = {});
InequalityReport check_zero_l(const GridFunction2D& u, const GridExtremal& w_m,
                              const ToleranceModel& tm = {});

// The m = n, l = 1 case written through the Laplacian and the cofactor
// gradient of the determinant.
InequalityReport check_p2(const RadialFunction& u, const RadialExtremal& w,
                          const ToleranceModel& tm = {});
InequalityReport check_p2(const GridFunction2D& u, const GridExtremal& w,
                          const ToleranceModel& tm = {});

// Dilation-invariant form: the inequality in the <.,.>_p quotients plus the
// exact homogeneity compensation checks under w -> mu w.
InequalityReport check_dilation_invariance(const RadialFunction& u, const RadialExtremal& w,
                                           double mu, const ToleranceModel& tm = {});
InequalityReport check_dilation_invariance(const GridFunction2D& u, const GridExtremal& w,
                                           double mu, const ToleranceModel& tm = {});

// T_p[w_ml] > 1 on interior nodes for 1 <= p <= m-1, and w_ml <= w_m0.
InequalityReport check_w2(const RadialExtremal& w_ml, const RadialExtremal& w_m0,
                          const ToleranceModel& tm = {});
InequalityReport check_w2(const GridExtremal& w_ml, const GridExtremal& w_m0,
                          const ToleranceModel& tm = {});

}  // namespace mhess
