#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "mhess/domain.hpp"
#include "mhess/symmatrix.hpp"

namespace mhess {

// Polar tensor grid over a Disc (or the unit-disc reference grid mapped onto
// an Ellipse2D by the diagonal map (x,y) = (a xi, b eta)). Radii
// rho_i = i R_ref/(nr-1), angles theta_j = 2 pi j / ntheta (periodic); the
// pole rho = 0 is stored once as node 0.
class PolarGrid {
 public:
  static constexpr int kMinRadial = 9;
  static constexpr int kMinAngular = 8;  // even, for diametral pole stencils

  PolarGrid(Domain domain, int nr, int ntheta);

  const Domain& domain() const { return domain_; }
  int nr() const { return nr_; }
  int ntheta() const { return ntheta_; }
  double dr() const { return domain_.reference_radius() / (nr_ - 1); }
  double dtheta() const { return 2.0 * kPi / ntheta_; }
  double rho(int i) const { return dr() * i; }
  double theta(int j) const { return dtheta() * j; }

  // Physical coordinates of node (i, j).
  std::array<double, 2> xy(int i, int j) const;

  std::size_t node_count() const {
    return 1 + static_cast<std::size_t>(nr_ - 1) * static_cast<std::size_t>(ntheta_);
  }
  // i = 0 maps every j to the single pole node 0.
  std::size_t node_index(int i, int j) const {
    if (i == 0) return 0;
    const int jj = ((j % ntheta_) + ntheta_) % ntheta_;
    return 1 + static_cast<std::size_t>(i - 1) * ntheta_ + static_cast<std::size_t>(jj);
  }

  bool operator==(const PolarGrid& o) const;

 private:
  Domain domain_;
  int nr_;
  int ntheta_;
};

// Scalar field on a PolarGrid. Boundary ring values are the Dirichlet data.
class GridFunction2D {
 public:
  GridFunction2D(Domain domain, int nr, int ntheta);
  GridFunction2D(PolarGrid grid, std::vector<double> values);

  static GridFunction2D sample(const Domain& domain, int nr, int ntheta,
                               const std::function<double(double, double)>& f);

  const PolarGrid& grid() const { return grid_; }
  const Domain& domain() const { return grid_.domain(); }
  int nr() const { return grid_.nr(); }
  int ntheta() const { return grid_.ntheta(); }

  double at(int i, int j) const { return values_[grid_.node_index(i, j)]; }
  double& at(int i, int j) { return values_[grid_.node_index(i, j)]; }
  double node(std::size_t k) const { return values_[k]; }
  double& node(std::size_t k) { return values_[k]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double max_abs() const;
  double boundary_max_abs() const;

  GridFunction2D& operator+=(const GridFunction2D& o);
  GridFunction2D& operator*=(double c);
  friend GridFunction2D operator+(GridFunction2D a, const GridFunction2D& b) { return a += b; }
  friend GridFunction2D operator*(double c, GridFunction2D a) { return a *= c; }

 private:
  PolarGrid grid_;
  std::vector<double> values_;
};

// How a node's derivative values were obtained.
enum class StencilKind : std::uint8_t { None = 0, Central = 1, Pole = 2, OneSided = 3 };

// Linear stencil for the three Cartesian second derivatives at one node:
// u_xx = sum coeff.cxx * u(node), etc.
struct HessianStencil {
  struct Term {
    std::size_t node;
    double cxx, cxy, cyy;
  };
  std::vector<Term> terms;
  StencilKind kind = StencilKind::None;
};

struct GradientStencil {
  struct Term {
    std::size_t node;
    double cx, cy;
  };
  std::vector<Term> terms;
  StencilKind kind = StencilKind::None;
};

// Second-order stencils: central for 0 < i < nr-1, diametral Fourier
// averaging at the pole, one-sided in rho on the boundary ring.
HessianStencil hessian_stencil(const PolarGrid& g, int i, int j);
GradientStencil gradient_stencil(const PolarGrid& g, int i, int j);

// Per-node Cartesian Hessian entries. Every node carries a value; `kind`
// records whether it came from a central, pole or one-sided stencil.
struct HessianField2D {
  std::vector<double> xx, xy, yy;
  std::vector<StencilKind> kind;
  SymMatrix matrix(std::size_t node) const;
};

struct GradientField2D {
  std::vector<double> x, y;
  std::vector<StencilKind> kind;
};

HessianField2D grid_hessian(const GridFunction2D& u);
GradientField2D grid_gradient(const GridFunction2D& u);

// Node-wise T_m of the Hessian: m = 1 is the Laplacian, m = 2 the
// determinant (n = 2 only).
GridFunction2D m_hessian_field(const GridFunction2D& u, int m);

// Max norm over nodes with full neighbor support of
//   T_m[u] - (1/m) div( u_j T_m^{ij}[u] ),
// differencing the already-discrete flux field.
double divergence_identity_residual(const GridFunction2D& u, int m);

// Max over rows j of the max norm of sum_i d_i T_m^{ij}[u]; the rows of the
// minor-gradient matrix are divergence free for smooth u.
double cofactor_divergence_residual(const GridFunction2D& u, int m);

// T_m of the Jacobian of v = grad u / sqrt(1 + |grad u|^2): the m-curvature
// of the graph of u. Defined away from the boundary ring (zero there).
GridFunction2D graph_curvature(const GridFunction2D& u, int m);

}  // namespace mhess
