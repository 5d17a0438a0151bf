#pragma once

#include <cstddef>

#include "mhess/grid.hpp"
#include "mhess/radial.hpp"

namespace mhess {

// Pointwise certification that the Hessian of u lies in K_m at every checked
// node (pole + interior; boundary nodes are excluded because one-sided
// stencils are lower order). When u vanishes on the boundary the sign
// condition u <= 0 is checked as well; a sign failure is reported with
// worst_order = 0.
struct AdmissibilityReport {
  int m = 0;
  bool admissible = false;
  std::ptrdiff_t worst_node = -1;
  int worst_order = 0;
  double worst_value = 0.0;
  bool sign_checked = false;
  double margin = 0.0;  // min over nodes and orders of T_p - threshold
};

AdmissibilityReport grid_admissibility(const GridFunction2D& u, int m);
AdmissibilityReport grid_admissibility(const RadialFunction& u, int n, int m);

}  // namespace mhess
