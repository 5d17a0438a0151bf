#include "mhess/domain.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mhess {

Domain Domain::ball(int n, double radius) {
  require(n >= 2 && n <= 8, "Domain: ball dimension must be in [2, 8]");
  require(radius > 0.0, "Domain: radius must be positive");
  Domain d;
  d.kind_ = Kind::Ball;
  d.n_ = n;
  d.r_ = radius;
  return d;
}

Domain Domain::disc(double radius) {
  Domain d = ball(2, radius);
  d.kind_ = Kind::Disc;
  return d;
}

Domain Domain::ellipse(double a, double b) {
  require(a > 0.0 && b > 0.0, "Domain: ellipse semi-axes must be positive");
  Domain d;
  d.kind_ = Kind::Ellipse;
  d.n_ = 2;
  d.a_ = a;
  d.b_ = b;
  return d;
}

double Domain::radius() const {
  require(kind_ != Kind::Ellipse, "Domain: ellipse has no single radius");
  return r_;
}

double Domain::reference_radius() const {
  return kind_ == Kind::Ellipse ? 1.0 : r_;
}

std::array<double, 2> Domain::scales() const {
  if (kind_ == Kind::Ellipse) return {a_, b_};
  return {1.0, 1.0};
}

double Domain::volume() const {
  if (kind_ == Kind::Ellipse) return kPi * a_ * b_;
  return unit_ball_volume(n_) * std::pow(r_, n_);
}

std::string Domain::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Ball: os << "ball(n=" << n_ << ",R=" << r_ << ")"; break;
    case Kind::Disc: os << "disc(R=" << r_ << ")"; break;
    case Kind::Ellipse: os << "ellipse(a=" << a_ << ",b=" << b_ << ")"; break;
  }
  return os.str();
}

double boundary_curvature(const Domain& domain, int p, double t) {
  const int n = domain.dim();
  require(p >= 0 && p <= n - 1, "boundary_curvature: order out of range");
  if (p == 0) return 1.0;
  if (domain.kind() == Domain::Kind::Ellipse) {
    // single principal curvature of the ellipse (a cos t, b sin t)
    const double a = domain.semi_axis_a();
    const double b = domain.semi_axis_b();
    const double s = a * a * std::sin(t) * std::sin(t) + b * b * std::cos(t) * std::cos(t);
    return a * b / std::pow(s, 1.5);
  }
  // n-1 principal curvatures all equal to 1/R
  return binomial(n - 1, p) * std::pow(domain.radius(), -p);
}

CurvatureProfile curvature_profile(const Domain& domain, int p, int samples) {
  require(samples >= 4, "curvature_profile: need at least 4 samples");
  CurvatureProfile prof;
  prof.p = p;
  prof.min_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    const double k = boundary_curvature(domain, p, t);
    prof.samples.emplace_back(t, k);
    prof.min_value = std::min(prof.min_value, k);
  }
  return prof;
}

ConvexityVerdict is_boundary_m_convex(const Domain& domain, int m) {
  require(m >= 1 && m <= domain.dim(), "is_boundary_m_convex: order out of range");
  const CurvatureProfile prof = curvature_profile(domain, m - 1);
  return {prof.min_value > 0.0, prof.min_value};
}

}  // namespace mhess
