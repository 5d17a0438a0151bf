#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mhess/integrals.hpp"
#include "mhess/solver.hpp"

using namespace mhess;

namespace {

double max_diff_radial(const RadialFunction& a, const RadialFunction& b) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_diff_grid(const GridFunction2D& a, const GridFunction2D& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.grid().node_count(); ++k)
    m = std::max(m, std::abs(a.node(k) - b.node(k)));
  return m;
}

}  // namespace

TEST_CASE("quadratic ansatz coefficients") {
  {
    const auto [a, w] = solve_radial_quadratic(3, 1, 0, 1.0, 65);
    CHECK(a == doctest::Approx(1.0 / 3.0));
    CHECK(w[0] == doctest::Approx(-1.0 / 6.0));
  }
  {
    const auto [a, w] = solve_radial_quadratic(3, 2, 1, 1.0, 65);
    CHECK(a == doctest::Approx(1.0));
    CHECK(w[0] == doctest::Approx(-0.5));
  }
  {
    const auto [a, w] = solve_radial_quadratic(3, 3, 2, 1.0, 65);
    CHECK(a == doctest::Approx(3.0));
    CHECK(w[0] == doctest::Approx(-1.5));
  }
  CHECK_THROWS_AS(solve_radial_quadratic(3, 2, 2, 1.0, 65), std::invalid_argument);
  CHECK_THROWS_AS(solve_radial_quadratic(3, 4, 0, 1.0, 65), std::invalid_argument);
}

TEST_CASE("quadratic ansatz satisfies the quotient equation") {
  for (int n : {2, 3, 4}) {
    for (int m = 1; m <= n; ++m) {
      for (int l = 0; l < m; ++l) {
        const auto [a, w] = solve_radial_quadratic(n, m, l, 1.0, 65);
        CHECK(quotient_solution_residual(w, n, m, l) <= 1e-10);
      }
    }
  }
}

TEST_CASE("radial ODE solver reproduces the closed forms") {
  for (int n : {2, 3}) {
    for (int m = 1; m <= n; ++m) {
      const RadialSolution sol =
          solve_radial_ode(n, m, [](double) { return 1.0; }, 1.0, 129);
      const auto [a, exact] = solve_radial_quadratic(n, m, 0, 1.0, 129);
      CHECK(max_diff_radial(sol.w, exact) <= 1e-8);
      CHECK(sol.residual_inf <= 1e-9);
      CHECK(sol.admissibility.admissible);
    }
  }

  // the m = 1, n = 2 case is the textbook Poisson solution (r^2 - R^2)/4
  const RadialSolution poisson =
      solve_radial_ode(2, 1, [](double) { return 1.0; }, 1.0, 129);
  const RadialFunction exact = RadialFunction::quadratic(0.5, 1.0, 129);
  CHECK(max_diff_radial(poisson.w, exact) <= 1e-10);
}

TEST_CASE("radial ODE solver on a varying right-hand side") {
  const RadialSolution sol =
      solve_radial_ode(3, 2, [](double r) { return 1.0 + r * r; }, 1.0, 129);
  CHECK(sol.residual_inf <= 1e-9);
  CHECK(sol.admissibility.admissible);
  CHECK(sol.w.boundary_value() == 0.0);

  // psi must be positive
  CHECK_THROWS_AS(solve_radial_ode(3, 2, [](double r) { return r - 0.5; }, 1.0, 129),
                  std::invalid_argument);

  // starving the iteration produces a convergence error
  NewtonOptions tight;
  tight.max_iterations = 1;
  tight.initial_scale = 3.0;
  CHECK_THROWS_AS(
      solve_radial_ode(3, 2, [](double r) { return 1.0 + r * r; }, 1.0, 129, tight),
      ConvergenceError);
}

TEST_CASE("radial solutions scale with the right-hand side") {
  const double mu = 1.7;
  const int n = 3, m = 2;
  const RadialSolution base = solve_radial_ode(n, m, [](double) { return 1.0; }, 1.0, 129);
  const RadialSolution scaled = solve_radial_ode(
      n, m, [mu, m](double) { return std::pow(mu, m); }, 1.0, 129);
  RadialFunction expect = base.w;
  expect *= mu;
  CHECK(max_diff_radial(scaled.w, expect) <= 1e-7);
}

TEST_CASE("Newton is insensitive to the starting iterate") {
  std::vector<RadialFunction> sols;
  for (double s : {0.5, 1.0, 2.0}) {
    NewtonOptions opts;
    opts.initial_scale = s;
    sols.push_back(
        solve_radial_ode(3, 2, [](double r) { return 1.0 + r * r; }, 1.0, 129, opts).w);
  }
  CHECK(max_diff_radial(sols[0], sols[1]) <= 1e-7);
  CHECK(max_diff_radial(sols[1], sols[2]) <= 1e-7);
}

TEST_CASE("grid Newton reproduces the disc quadratics") {
  const Domain disc = Domain::disc(1.0);
  for (int l : {0, 1}) {
    const DirichletProblem prob(disc, 2, 2, l, [](double, double) { return 1.0; });
    const GridSolution sol = solve_grid_newton(prob, 65, 64);
    const double a = (l == 0) ? 1.0 : 2.0;
    const GridFunction2D exact = GridFunction2D::sample(
        disc, 65, 64, [a](double x, double y) { return a * (x * x + y * y - 1.0) / 2.0; });
    CHECK(max_diff_grid(sol.w, exact) <= 1e-6);
    CHECK(sol.residual_inf <= 1e-7);
    CHECK(sol.admissibility.admissible);
    CHECK(quotient_solution_residual(sol.w, 2, l) <= 1e-6);
  }

  // m = 1 is the Poisson problem
  const DirichletProblem poisson(disc, 2, 1, 0, [](double, double) { return 1.0; });
  const GridSolution psol = solve_grid_newton(poisson, 65, 64);
  const GridFunction2D pexact = GridFunction2D::sample(
      disc, 65, 64, [](double x, double y) { return (x * x + y * y - 1.0) / 4.0; });
  CHECK(max_diff_grid(psol.w, pexact) <= 1e-8);
}

TEST_CASE("grid Newton handles angular right-hand sides") {
  const Domain disc = Domain::disc(1.0);
  const DirichletProblem prob(disc, 2, 2, 0, [](double x, double) { return 1.0 + 0.1 * x; });
  const GridSolution sol = solve_grid_newton(prob, 65, 64);

  // starting-iterate insensitivity
  for (double s : {0.6, 1.8}) {
    NewtonOptions opts;
    opts.initial_scale = s;
    const GridSolution other = solve_grid_newton(prob, 65, 64, opts);
    CHECK(max_diff_grid(sol.w, other.w) <= 1e-7);
  }
  CHECK(sol.residual_inf <= 1e-7);
  CHECK(sol.admissibility.admissible);
  CHECK(sol.w.boundary_max_abs() == 0.0);

  // Newton tail: the final accepted step contracts strongly
  REQUIRE(sol.residual_history.size() >= 3);
  const double last = sol.residual_history.back();
  const double prev = sol.residual_history[sol.residual_history.size() - 2];
  CHECK(last <= prev / 50.0);
}

TEST_CASE("grid Newton on the ellipse (experimental configuration)") {
  const Domain ell = Domain::ellipse(1.3, 0.8);
  const DirichletProblem prob(ell, 2, 2, 0, [](double, double) { return 1.0; });
  const GridSolution sol = solve_grid_newton(prob, 49, 48);
  CHECK(sol.residual_inf <= 1e-7);
  CHECK(sol.admissibility.admissible);
}

TEST_CASE("solution comparison across quotient orders") {
  // a_{m,l} >= a_{m,0}, so w_{m,l} <= w_{m,0} pointwise on the ball
  for (int n : {2, 3}) {
    for (int m = 2; m <= n; ++m) {
      const auto [a0, w0] = solve_radial_quadratic(n, m, 0, 1.0, 65);
      for (int l = 1; l < m; ++l) {
        const auto [al, wl] = solve_radial_quadratic(n, m, l, 1.0, 65);
        CHECK(al >= a0);
        for (int i = 0; i < 64; ++i) CHECK(wl[i] <= w0[i] + 1e-14);
        // T_p[w_{m,l}] > 1 for p = 1..m-1
        for (int p = 1; p < m; ++p) {
          const RadialFunction tp = radial_m_hessian(wl, n, p);
          for (int i = 0; i < 64; ++i) CHECK(tp[i] > 1.0);
        }
      }
    }
  }
}

TEST_CASE("wrong-branch starts are rejected by the sign contract") {
  // for even m the equation admits the +w twin; forcing the iteration onto
  // it trips the nonpositive-branch check
  NewtonOptions opts;
  opts.initial_scale = -1.0;
  CHECK_THROWS_AS(solve_radial_ode(3, 2, [](double) { return 1.0; }, 1.0, 65, opts),
                  std::invalid_argument);
}

TEST_CASE("quotient residual flags scaled non-solutions") {
  const auto [a, w] = solve_radial_quadratic(3, 2, 1, 1.0, 65);
  CHECK(quotient_solution_residual(w, 3, 2, 1) <= 1e-10);
  const RadialFunction doubled = 2.0 * w;
  CHECK(quotient_solution_residual(doubled, 3, 2, 1) > 0.5);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(DirichletProblem(Domain::disc(1.0), 2, 2, 2, [](double, double) { return 1.0; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(DirichletProblem(Domain::ball(3, 1.0), 2, 2, 0, [](double, double) { return 1.0; }),
                  std::invalid_argument);
  const DirichletProblem prob(Domain::disc(1.0), 2, 2, 0,
                              [](double x, double) { return x; });  // not positive
  CHECK_THROWS_AS(solve_grid_newton(prob, 33, 32), std::invalid_argument);
}
