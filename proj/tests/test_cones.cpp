#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhess/admissibility.hpp"
#include "mhess/domain.hpp"
#include "mhess/report_io.hpp"

using namespace mhess;

TEST_CASE("boundary curvature closed forms") {
  const Domain ball32 = Domain::ball(3, 2.0);
  CHECK(boundary_curvature(ball32, 0, 0.3) == 1.0);
  CHECK(boundary_curvature(ball32, 1, 1.0) == doctest::Approx(1.0));  // C(2,1)/2
  CHECK(boundary_curvature(ball32, 2, 0.0) == doctest::Approx(0.25));

  const Domain ell = Domain::ellipse(2.0, 1.0);
  CHECK(boundary_curvature(ell, 0, 0.1) == 1.0);
  CHECK(boundary_curvature(ell, 1, 0.0) == doctest::Approx(2.0));
  CHECK(boundary_curvature(ell, 1, kPi / 2) == doctest::Approx(0.25));  // ab/a^3

  CHECK_THROWS_AS(boundary_curvature(ell, 2, 0.0), std::invalid_argument);
}

TEST_CASE("ball curvature is constant along the boundary") {
  const Domain b = Domain::ball(4, 1.7);
  const CurvatureProfile prof = curvature_profile(b, 2);
  for (const auto& [t, k] : prof.samples) CHECK(k == prof.samples.front().second);
  CHECK(prof.min_value == prof.samples.front().second);
}

TEST_CASE("convexity gate") {
  const auto [ok3, margin3] = is_boundary_m_convex(Domain::ball(3, 1.0), 2);
  CHECK(ok3);
  CHECK(margin3 == doctest::Approx(2.0));  // C(2,1) R^{-1}

  const auto [okd, margind] = is_boundary_m_convex(Domain::disc(2.0), 2);
  CHECK(okd);
  CHECK(margind == doctest::Approx(0.5));  // 1/R

  const auto [oke, margine] = is_boundary_m_convex(Domain::ellipse(2.0, 1.0), 2);
  CHECK(oke);
  CHECK(margine == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("radial admissibility") {
  const double R = 1.0;
  // convex paraboloid: Hessian is the identity
  const RadialFunction good = RadialFunction::quadratic(1.0, R, 65);
  for (int m = 1; m <= 3; ++m) {
    const AdmissibilityReport rep = grid_admissibility(good, 3, m);
    CHECK(rep.admissible);
    CHECK(rep.sign_checked);
  }

  // flipped sign: rejected via the u <= 0 condition (and T_1 < 0)
  const RadialFunction bad = RadialFunction::quadratic(-1.0, R, 65);
  const AdmissibilityReport rep = grid_admissibility(bad, 3, 1);
  CHECK(!rep.admissible);

  // admissible solutions with zero boundary data stay nonpositive
  double max_u = -1e300;
  for (int i = 0; i < good.size(); ++i) max_u = std::max(max_u, good[i]);
  CHECK(max_u <= 1e-12);
}

TEST_CASE("grid admissibility") {
  const Domain disc = Domain::disc(1.0);

  const GridFunction2D convex = GridFunction2D::sample(
      disc, 33, 32, [](double x, double y) { return (x * x + y * y - 1.0) / 2.0; });
  CHECK(grid_admissibility(convex, 1).admissible);
  CHECK(grid_admissibility(convex, 2).admissible);

  const GridFunction2D flipped = GridFunction2D::sample(
      disc, 33, 32, [](double x, double y) { return (1.0 - x * x - y * y) / 2.0; });
  const AdmissibilityReport frep = grid_admissibility(flipped, 1);
  CHECK(!frep.admissible);

  // saddle with constant Hessian diag(1,-2): T_1 = -1 < 0
  const GridFunction2D saddle = GridFunction2D::sample(
      disc, 33, 32, [](double x, double y) { return (x * x - 2.0 * y * y) / 2.0; });
  const AdmissibilityReport srep = grid_admissibility(saddle, 1);
  CHECK(!srep.admissible);
  CHECK(srep.worst_value == doctest::Approx(-1.0).epsilon(2e-2));
}

TEST_CASE("admissibility nests across orders") {
  const Domain disc = Domain::disc(1.0);
  const GridFunction2D u = GridFunction2D::sample(disc, 33, 32, [](double x, double y) {
    return (x * x + y * y - 1.0) / 2.0 * (1.0 + 0.1 * x);
  });
  if (grid_admissibility(u, 2).admissible) CHECK(grid_admissibility(u, 1).admissible);
}

TEST_CASE("grid shape validation") {
  CHECK_THROWS_AS(PolarGrid(Domain::disc(1.0), 4, 32), std::invalid_argument);
  CHECK_THROWS_AS(PolarGrid(Domain::disc(1.0), 33, 6), std::invalid_argument);
  CHECK_THROWS_AS(PolarGrid(Domain::disc(1.0), 33, 31), std::invalid_argument);  // odd
  CHECK_THROWS_AS(PolarGrid(Domain::ball(3, 1.0), 33, 32), std::invalid_argument);
}

TEST_CASE("profile and field JSON round trips validate shapes") {
  const RadialFunction w = RadialFunction::quadratic(0.5, 1.5, 33);
  const RadialFunction wb = radial_from_json(to_json(w));
  CHECK(wb.size() == w.size());
  CHECK(wb[7] == w[7]);

  const GridFunction2D u = GridFunction2D::sample(
      Domain::ellipse(2.0, 1.0), 17, 16, [](double x, double y) { return x + y * y; });
  const GridFunction2D ub = grid_from_json(to_json(u));
  CHECK(ub.at(5, 3) == u.at(5, 3));
  CHECK(ub.domain().kind() == Domain::Kind::Ellipse);

  Json truncated = to_json(u);
  truncated["values"].erase(truncated["values"].size() - 1);
  CHECK_THROWS_AS(grid_from_json(truncated), std::invalid_argument);
  Json badn = to_json(w);
  badn["N"] = 99;
  CHECK_THROWS_AS(radial_from_json(badn), std::invalid_argument);
}

TEST_CASE("domain JSON round trip") {
  for (const Domain& d :
       {Domain::ball(3, 1.5), Domain::disc(2.0), Domain::ellipse(2.0, 0.5)}) {
    const Domain back = domain_from_json(to_json(d));
    CHECK(back.kind() == d.kind());
    CHECK(back.dim() == d.dim());
    CHECK(back.volume() == doctest::Approx(d.volume()));
  }
  Json bad;
  bad["kind"] = "torus";
  CHECK_THROWS_AS(domain_from_json(bad), std::invalid_argument);
}
