#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mhess/common.hpp"

namespace mhess {

// Ball(n,R), Disc(R) (= Ball(2,R)) or Ellipse2D(a,b). Boundaries are
// analytic, so curvature queries are closed-form.
class Domain {
 public:
  enum class Kind { Ball, Disc, Ellipse };

  static Domain ball(int n, double radius);
  static Domain disc(double radius);
  static Domain ellipse(double a, double b);

  Kind kind() const { return kind_; }
  int dim() const { return n_; }

  // Ball/Disc radius; invalid for ellipses.
  double radius() const;
  double semi_axis_a() const { return a_; }
  double semi_axis_b() const { return b_; }

  // Radius of the reference polar grid (physical radius for discs, 1 for the
  // mapped ellipse grid) and the linear map applied to reference coordinates.
  double reference_radius() const;
  std::array<double, 2> scales() const;

  double volume() const;
  bool is_two_dimensional() const { return n_ == 2; }
  std::string describe() const;

 private:
  Domain() = default;
  Kind kind_ = Kind::Ball;
  int n_ = 2;
  double r_ = 1.0;  // Ball/Disc
  double a_ = 1.0, b_ = 1.0;  // Ellipse
};

// p-curvature k_p of the boundary at parameter t: the elementary symmetric
// function of order p of the principal curvatures. t is the boundary angle
// for 2-D domains and is ignored for balls.
double boundary_curvature(const Domain& domain, int p, double t);

struct CurvatureProfile {
  int p = 0;
  std::vector<std::pair<double, double>> samples;  // (parameter, k_p)
  double min_value = 0.0;
};
CurvatureProfile curvature_profile(const Domain& domain, int p, int samples = 256);

struct ConvexityVerdict {
  bool convex = false;
  double margin = 0.0;  // min over sampled boundary of k_{m-1}
};

// Solvability gate: the boundary is (m-1)-convex iff k_{m-1} > 0 everywhere.
ConvexityVerdict is_boundary_m_convex(const Domain& domain, int m);

}  // namespace mhess
