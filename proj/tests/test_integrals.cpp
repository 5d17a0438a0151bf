#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mhess/integrals.hpp"
#include "mhess/solver.hpp"

using namespace mhess;

namespace {

// admissible radial bump vanishing at the boundary, even in r
RadialFunction radial_bump(double radius, int n_nodes, double amp = 1.0) {
  return RadialFunction::sample(radius, n_nodes, [radius, amp](double r) {
    const double s = r / radius;
    return amp * (r * r - radius * radius) / 2.0 * (1.0 + 0.3 * s * s);
  });
}

}  // namespace

TEST_CASE("quadrature weights sum to domain volumes") {
  for (int n : {2, 3, 4}) {
    const QuadratureRule q = QuadratureRule::radial_shell(n, 1.3, 129);
    const double vol = unit_ball_volume(n) * std::pow(1.3, n);
    CHECK(q.volume() == doctest::Approx(vol).epsilon(1e-10));
  }
  // the 1-D backbone is fourth order; higher n needs finer grids for the
  // r^{n-1} jacobian
  for (int n : {5, 6, 7, 8}) {
    const QuadratureRule q = QuadratureRule::radial_shell(n, 1.0, 1025);
    CHECK(q.volume() == doctest::Approx(unit_ball_volume(n)).epsilon(1e-10));
  }

  const QuadratureRule disc = QuadratureRule::polar_tensor(PolarGrid(Domain::disc(2.0), 65, 64));
  CHECK(disc.volume() == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  const QuadratureRule ell =
      QuadratureRule::polar_tensor(PolarGrid(Domain::ellipse(2.0, 0.5), 65, 64));
  CHECK(ell.volume() == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("quadrature integrates polynomial profiles to analytic values") {
  const int N = 513;
  const QuadratureRule q = QuadratureRule::radial_shell(3, 1.0, N);
  std::vector<double> r2(static_cast<size_t>(N)), shell(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double r = double(i) / (N - 1);
    r2[size_t(i)] = r * r;
    shell[size_t(i)] = 1.0 - r * r;
  }
  CHECK(q.integrate(r2) == doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-10));
  CHECK(q.integrate(shell) == doctest::Approx(8.0 * kPi / 15.0).epsilon(1e-10));
}

TEST_CASE("Hessian integral golden value") {
  // I_2 of a (r^2-1)/2 on the unit 3-ball is C(3,2) a^3 (4 pi / 15)
  const double a = 1.0 / std::sqrt(3.0);
  const RadialFunction w = RadialFunction::quadratic(a, 1.0, 513);
  const double want = 3.0 * a * a * a * (4.0 * kPi / 15.0);
  CHECK(want == doctest::Approx(0.48368).epsilon(1e-4));
  CHECK(hessian_integral(w, 3, 2) == doctest::Approx(want).epsilon(1e-8));

  CHECK(hessian_integral(RadialFunction(1.0, std::vector<double>(129, 0.0)), 3, 2) == 0.0);

  // nonzero boundary data is refused
  const RadialFunction shifted =
      RadialFunction::sample(1.0, 129, [](double r) { return r * r; });
  CHECK_THROWS_AS(hessian_integral(shifted, 3, 1), std::invalid_argument);
}

TEST_CASE("Hessian integral homogeneity") {
  const RadialFunction u = radial_bump(1.0, 129);
  for (int m : {1, 2, 3}) {
    const double base = hessian_integral(u, 3, m);
    for (double mu : {0.5, 2.0, 7.0}) {
      const double scaled = hessian_integral(mu * u, 3, m);
      CHECK(scaled == doctest::Approx(std::pow(mu, m + 1) * base).epsilon(1e-10));
    }
  }
}

TEST_CASE("grid Hessian integrals agree with the radial route") {
  const double a = 0.7;
  const RadialFunction wr = RadialFunction::quadratic(a, 1.0, 129);
  const GridFunction2D wg = GridFunction2D::sample(
      Domain::disc(1.0), 129, 32,
      [a](double x, double y) { return a * (x * x + y * y - 1.0) / 2.0; });
  for (int m : {0, 1, 2}) {
    CHECK(hessian_integral(wg, m) ==
          doctest::Approx(hessian_integral(wr, 2, m)).epsilon(1e-9));
  }
}

TEST_CASE("functional J") {
  const double a = 1.0 / std::sqrt(3.0);
  const RadialFunction w = RadialFunction::quadratic(a, 1.0, 513);
  const double i2 = hessian_integral(w, 3, 2);
  CHECK(functional_J(w, 3, 2, 0) == doctest::Approx(std::pow(i2, 1.0 / 3.0 - 1.0)).epsilon(1e-12));
  CHECK(functional_J(w, 3, 2, 0) == doctest::Approx(1.6233).epsilon(1e-3));

  // scale invariance
  const RadialFunction u = radial_bump(1.0, 129);
  CHECK(functional_J(3.0 * u, 3, 2, 1) == doctest::Approx(functional_J(u, 3, 2, 1)).epsilon(1e-10));

  CHECK_THROWS_AS(functional_J(u, 3, 2, 2), std::invalid_argument);
}

TEST_CASE("weighted inner products") {
  const int n = 3, N = 129;
  const RadialFunction w = RadialFunction::quadratic(1.0, 1.0, N);
  const RadialFunction u = radial_bump(1.0, N, 0.8);
  const RadialFunction v = radial_bump(1.0, N, -0.4);

  // p = 1 is the Dirichlet inner product regardless of the weight
  const QuadratureRule q = QuadratureRule::radial_shell(n, 1.0, N);
  const auto du = u.d1();
  const auto dv = v.d1();
  std::vector<double> prod(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) prod[size_t(i)] = du[size_t(i)] * dv[size_t(i)];
  CHECK(weighted_inner_product(u, v, 1, w, n) == doctest::Approx(q.integrate(prod)).epsilon(1e-12));

  // symmetry and positivity
  for (int p : {1, 2, 3}) {
    CHECK(weighted_inner_product(u, v, p, w, n) ==
          doctest::Approx(weighted_inner_product(v, u, p, w, n)).epsilon(1e-12));
    CHECK(weighted_inner_product(u, u, p, w, n) > 0.0);
  }
  CHECK(weighted_inner_product(u, v, 0, w, n) == 0.0);

  // <w,w>_p = p I_p[w] for quotient solutions, up to quadrature error
  for (int p : {1, 2, 3}) {
    CHECK(weighted_inner_product(w, w, p, w, n) ==
          doctest::Approx(p * hessian_integral(w, n, p)).epsilon(1e-7));
  }
}

TEST_CASE("grid weighted inner products") {
  const Domain disc = Domain::disc(1.0);
  const int nr = 65, nt = 64;
  const GridFunction2D w = GridFunction2D::sample(
      disc, nr, nt, [](double x, double y) { return (x * x + y * y - 1.0) / 2.0; });
  const GridFunction2D u = GridFunction2D::sample(disc, nr, nt, [](double x, double y) {
    return (x * x + y * y - 1.0) / 2.0 * (1.0 + 0.2 * x);
  });

  for (int p : {1, 2}) {
    CHECK(weighted_inner_product(u, w, p, w) ==
          doctest::Approx(weighted_inner_product(w, u, p, w)).epsilon(1e-12));
    CHECK(weighted_inner_product(u, u, p, w) > 0.0);
    CHECK(weighted_inner_product(w, w, p, w) ==
          doctest::Approx(p * hessian_integral(w, p)).epsilon(1e-7));
  }
}

TEST_CASE("first variation: numeric and closed-form paths agree") {
  // the dual-path defect is the O(h^2) discrete by-parts error, so a fine
  // radial grid is needed for 1e-6 agreement
  const int n = 3, N = 1025;
  const std::pair<double, RadialFunction> sol = solve_radial_quadratic(n, 2, 0, 1.0, N);
  const RadialFunction& u = sol.second;
  const RadialFunction h = radial_bump(1.0, N, 0.5);

  const FirstVariation fv = first_variation_I(u, h, n, 2);
  CHECK(fv.direct == doctest::Approx(fv.identity).epsilon(1e-6));
  CHECK(fv.direct_refined == doctest::Approx(fv.identity).epsilon(1e-6));
  CHECK(std::abs(fv.identity) > 0.0);  // nonzero first variation

  const RadialFunction zero(1.0, std::vector<double>(size_t(N), 0.0));
  const FirstVariation fz = first_variation_I(u, zero, n, 2);
  CHECK(fz.direct == doctest::Approx(0.0));
  CHECK(fz.identity == doctest::Approx(0.0));

  // direction must vanish on the boundary
  const RadialFunction bad = RadialFunction::sample(1.0, N, [](double r) { return 1.0 + r; });
  CHECK_THROWS_AS(first_variation_I(u, bad, n, 2), std::invalid_argument);
}

TEST_CASE("first variation dual-path defect decays at second order") {
  const int n = 3;
  auto defect = [n](int N) {
    const auto [a, u] = solve_radial_quadratic(n, 2, 0, 1.0, N);
    const RadialFunction h = RadialFunction::sample(1.0, N, [](double r) {
      return (r * r - 1.0) / 2.0 * (0.4 + 0.3 * r * r);
    });
    const FirstVariation fv = first_variation_I(u, h, n, 2);
    return std::abs(fv.direct - fv.identity);
  };
  const double d1 = defect(129);
  const double d2 = defect(257);
  CHECK(d1 / d2 > 3.0);
  CHECK(d1 / d2 < 5.5);
}

TEST_CASE("second variation of I") {
  const int n = 3, N = 513;
  const RadialFunction u = RadialFunction::quadratic(1.0, 1.0, N);
  const RadialFunction h = radial_bump(1.0, N, 0.5);

  // m = 1: the gradient matrix is the identity, so the form is the Dirichlet
  // energy doubled
  const double dir = weighted_inner_product(h, h, 1, u, n);
  CHECK(second_variation_I(u, h, n, 1) == doctest::Approx(2.0 * dir).epsilon(1e-12));

  for (int m : {1, 2, 3}) {
    const double analytic = second_variation_I(u, h, n, m);
    const double numeric = second_variation_I_numeric(u, h, n, m);
    CHECK(numeric == doctest::Approx(analytic).epsilon(1e-5));
  }

  const RadialFunction zero(1.0, std::vector<double>(size_t(N), 0.0));
  CHECK(second_variation_I(u, zero, n, 2) == 0.0);
}

TEST_CASE("second variation of J at the minimizer") {
  const int n = 3, N = 513;
  const auto [a, w] = solve_radial_quadratic(n, 2, 0, 1.0, N);

  // h = w collapses the bracket through the by-parts identity
  const double at_w = second_variation_J(w, w, n, 2, 0);
  CHECK(std::abs(at_w) <= 1e-8);

  const RadialFunction h = radial_bump(1.0, N, 0.3);
  CHECK(second_variation_J(w, h, n, 2, 0) >= -1e-10);

  const RadialFunction zero(1.0, std::vector<double>(size_t(N), 0.0));
  CHECK(second_variation_J(w, zero, n, 2, 0) == 0.0);

  // a non-solution weight is rejected
  CHECK_THROWS_AS(second_variation_J(2.0 * w, h, n, 2, 0), std::invalid_argument);
}

TEST_CASE("second variation of J for the quotient pair (2,1)") {
  const int n = 3, N = 129;
  const auto [a, w] = solve_radial_quadratic(n, 2, 1, 1.0, N);
  CHECK(std::abs(second_variation_J(w, w, n, 2, 1)) <= 1e-8);
  const RadialFunction h = radial_bump(1.0, N, 0.2);
  CHECK(second_variation_J(w, h, n, 2, 1) >= -1e-10);
}
