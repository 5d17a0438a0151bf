#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mhess/sampling.hpp"
#include "mhess/symfunc.hpp"
#include "support/oracles.hpp"

using namespace mhess;

namespace {

SymMatrix diag3(double a, double b, double c) {
  const double d[3] = {a, b, c};
  return SymMatrix::diagonal(std::span<const double>(d, 3));
}

SymMatrix diag2(double a, double b) {
  const double d[2] = {a, b};
  return SymMatrix::diagonal(std::span<const double>(d, 2));
}

}  // namespace

TEST_CASE("m_trace basics") {
  const SymMatrix i4 = SymMatrix::identity(4);
  CHECK(m_trace(i4, 0) == doctest::Approx(1.0));
  CHECK(m_trace(i4, 2) == doctest::Approx(6.0));  // C(4,2)

  const SymMatrix d = diag3(1, 2, 3);
  CHECK(m_trace(d, 2) == doctest::Approx(11.0).epsilon(1e-13));
  CHECK(m_trace(d, 3) == doctest::Approx(6.0).epsilon(1e-13));

  CHECK_THROWS_AS(m_trace(d, 4), std::invalid_argument);
  CHECK_THROWS_AS(m_trace(d, -1), std::invalid_argument);
}

TEST_CASE("m_trace_from_eigenvalues") {
  const double a[3] = {1, 1, 1};
  CHECK(m_trace_from_eigenvalues(std::span<const double>(a, 3), 2) == doctest::Approx(3.0));
  const double b[3] = {1, 2, 3};
  CHECK(m_trace_from_eigenvalues(std::span<const double>(b, 3), 3) == doctest::Approx(6.0));
  const double c[3] = {2, -1, 4};
  CHECK(m_trace_from_eigenvalues(std::span<const double>(c, 3), 2) == doctest::Approx(2.0));
}

TEST_CASE("trace vector invariants") {
  const SymMatrix d = diag3(-1.5, 0.25, 2.0);
  const TraceVector t = trace_vector(d);
  CHECK(t.order() == 3);
  CHECK(t[0] == 1.0);
  CHECK(t[1] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("minor-sum oracle agreement on random matrices") {
  std::mt19937_64 rng(42);
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      const SymMatrix s = sample_gaussian_sym(n, rng);
      for (int m = 0; m <= n; ++m) {
        const double got = m_trace(s, m);
        const double want = oracle::brute_force_m_trace(s, m);
        const double scale = std::max(1.0, oracle::m_trace_scale(s, m));
        CHECK(std::abs(got - want) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("faddeev-leverrier route agrees with the eigenvalue route") {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 8; ++n) {
    const SymMatrix s = sample_gaussian_sym(n, rng);
    const std::vector<double> t = traces_faddeev_leverrier(s);
    for (int m = 0; m <= n; ++m) {
      const double scale = std::max(1.0, oracle::m_trace_scale(s, m));
      CHECK(std::abs(t[size_t(m)] - m_trace(s, m)) <= 1e-11 * scale);
    }
  }
}

TEST_CASE("orthogonal invariance of m-traces") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + int(rng() % 7);
    const SymMatrix s = sample_gaussian_sym(n, rng);
    const Eigen::MatrixXd b = oracle::random_orthogonal(n, rng);
    const SymMatrix conj(b * s.mat() * b.transpose());
    for (int m = 0; m <= n; ++m) {
      const double tm = m_trace(s, m);
      CHECK(std::abs(m_trace(conj, m) - tm) <= 1e-10 * (1.0 + std::abs(tm)));
    }
  }
}

TEST_CASE("gradient closed forms") {
  // gradient of the trace is the identity
  const SymMatrix d = diag3(1, 2, 3);
  const SymMatrix g1 = m_trace_gradient(d, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(g1(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  // n=2, m=2: [[a,b],[b,c]] -> [[c,-b],[-b,a]]
  Eigen::MatrixXd m2(2, 2);
  m2 << 1.5, -0.5, -0.5, 2.0;
  const SymMatrix s2(m2);
  const SymMatrix g2 = m_trace_gradient(s2, 2);
  CHECK(g2(0, 0) == doctest::Approx(2.0));
  CHECK(g2(0, 1) == doctest::Approx(0.5));
  CHECK(g2(1, 1) == doctest::Approx(1.5));

  // identity: gradient of T_2 at I_3 is 2 I
  const SymMatrix gi = m_trace_gradient(SymMatrix::identity(3), 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(gi(i, j) == doctest::Approx(i == j ? 2.0 : 0.0));

  // m = 0 gradient vanishes
  CHECK(m_trace_gradient(d, 0).max_abs() == 0.0);
}

TEST_CASE("gradient matches the finite-difference oracle with O(h^2) decay") {
  std::mt19937_64 rng(13);
  for (int n : {3, 5}) {
    const SymMatrix s = sample_gaussian_sym(n, rng);
    for (int m = 1; m <= n; ++m) {
      const SymMatrix g = m_trace_gradient(s, m);
      auto f = [m](const SymMatrix& x) { return m_trace(x, m); };
      double err4 = 0.0, err5 = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          const double fac = (i == j) ? 1.0 : 2.0;  // symmetric perturbation hits both
          err4 = std::max(err4,
                          std::abs(oracle::fd_symmetric_entry(s, i, j, 1e-4, f) - fac * g(i, j)));
          err5 = std::max(err5,
                          std::abs(oracle::fd_symmetric_entry(s, i, j, 1e-5, f) - fac * g(i, j)));
        }
      }
      CHECK(err4 <= 1e-5);
      // second-order decay, allowing roundoff floor at the smaller step
      CHECK(err5 <= std::max(err4 / 20.0, 5e-9));
    }
  }
}

TEST_CASE("Euler identity sum_ij T_m^ij s_ij = m T_m") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + int(rng() % 7);
    const SymMatrix s = sample_gaussian_sym(n, rng);
    for (int m = 1; m <= n; ++m) {
      const SymMatrix g = m_trace_gradient(s, m);
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += g(i, j) * s(i, j);
      const double tm = m_trace(s, m);
      CHECK(std::abs(acc - m * tm) <= 1e-10 * (1.0 + std::abs(tm)) * oracle::m_trace_scale(s, m));
    }
  }
}

TEST_CASE("deleted traces") {
  const SymMatrix i5 = SymMatrix::identity(5);
  for (int m = 1; m <= 5; ++m)
    for (int i = 0; i < 5; ++i)
      CHECK(deleted_trace(i5, m, i) == doctest::Approx(binomial(4, m - 1)));

  const SymMatrix d = diag3(1, 2, 3);
  CHECK(deleted_trace(d, 2, 0) == doctest::Approx(5.0));  // T_1(diag(2,3))
  CHECK(deleted_trace(d, 3, 1) == doctest::Approx(3.0));  // det(diag(1,3))
  CHECK_THROWS_AS(deleted_trace(d, 2, 3), std::invalid_argument);

  // diagonal of the gradient matrix reproduces the deleted traces
  std::mt19937_64 rng(19);
  const SymMatrix s = sample_gaussian_sym(4, rng);
  for (int m = 1; m <= 4; ++m) {
    const SymMatrix g = m_trace_gradient(s, m);
    for (int i = 0; i < 4; ++i)
      CHECK(g(i, i) == doctest::Approx(deleted_trace(s, m, i)).epsilon(1e-10));
  }
}

TEST_CASE("cone membership") {
  const SymMatrix i3 = SymMatrix::identity(3);
  for (int m = 1; m <= 3; ++m) {
    const ConeVerdict v = cone_membership(i3, m);
    CHECK(v.member);
    CHECK(!v.first_failure.has_value());
    CHECK(v.margin >= 1.0);
  }

  const ConeVerdict bad = cone_membership(diag2(-1, 3), 2);
  CHECK(!bad.member);
  CHECK(bad.first_failure.value() == 2);
  CHECK(bad.margin == doctest::Approx(-3.0));

  // T_2 = 0 fails strictness
  const ConeVerdict edge = cone_membership(diag3(2, 2, -1), 2);
  CHECK(!edge.member);
  CHECK(edge.first_failure.value() == 2);
}

TEST_CASE("cone segment to the identity stays inside (connectivity proxy)") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + int(rng() % 5);
    const int m = 1 + int(rng() % n);
    const SymMatrix s = sample_cone_matrix(n, m, rng);
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const SymMatrix mix((1.0 - t) * Eigen::MatrixXd::Identity(n, n) + t * s.mat());
      CHECK(cone_membership(mix, m).member);
    }
  }
}

TEST_CASE("deleted-trace positivity on the cone") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + int(rng() % 5);
    const int m = 1 + int(rng() % n);
    const SymMatrix s = sample_cone_matrix(n, m, rng);
    for (int i = 0; i < n; ++i) CHECK(deleted_trace(s, m, i) > 0.0);
  }
}

TEST_CASE("quotient") {
  CHECK(quotient(SymMatrix::identity(3), 2, 1) == doctest::Approx(1.0));
  CHECK(quotient(diag3(1, 2, 3), 2, 1) == doctest::Approx(11.0 / 6.0));
  CHECK(quotient(diag3(1, 2, 3), 2, 0) == doctest::Approx(m_trace(diag3(1, 2, 3), 2)));
  CHECK_THROWS_AS(quotient(diag2(-1, 3), 2, 1), std::domain_error);
  CHECK_THROWS_AS(quotient(diag3(1, 2, 3), 2, 2), std::invalid_argument);
}

TEST_CASE("quotient gradient") {
  const SymMatrix g = quotient_gradient(SymMatrix::identity(3), 2, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 / 3.0 : 0.0).epsilon(1e-12));

  // l = 0 reduces to the plain gradient
  const SymMatrix d = diag3(1, 2, 3);
  const SymMatrix q0 = quotient_gradient(d, 2, 0);
  const SymMatrix g2 = m_trace_gradient(d, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(q0(i, j) == doctest::Approx(g2(i, j)));

  // finite differences of the quotient, O(h^2)
  std::mt19937_64 rng(31);
  const SymMatrix s = sample_cone_matrix(4, 3, rng);
  const SymMatrix qg = quotient_gradient(s, 3, 1);
  auto f = [](const SymMatrix& x) { return quotient(x, 3, 1); };
  double err4 = 0.0, err5 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const double fac = (i == j) ? 1.0 : 2.0;
      err4 = std::max(err4,
                      std::abs(oracle::fd_symmetric_entry(s, i, j, 1e-4, f) - fac * qg(i, j)));
      err5 = std::max(err5,
                      std::abs(oracle::fd_symmetric_entry(s, i, j, 1e-5, f) - fac * qg(i, j)));
    }
  CHECK(err4 <= 1e-6);
  CHECK(err5 <= std::max(err4 / 20.0, 5e-10));
}

TEST_CASE("ellipticity: quotient gradient is positive definite on the cone") {
  std::mt19937_64 rng(37);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + int(rng() % 5);
    const int m = 2 + int(rng() % (n - 1));
    const int l = int(rng() % m);
    const SymMatrix s = sample_cone_matrix(n, m, rng);
    const SymMatrix g = quotient_gradient(s, m, l);
    CHECK(g.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("maclaurin margin") {
  CHECK(maclaurin_margin(SymMatrix::identity(4), 1, 3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(maclaurin_margin(diag3(1, 2, 3), 1, 2) ==
        doctest::Approx(2.0 - std::sqrt(11.0 / 3.0)).epsilon(1e-12));

  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 2 + int(rng() % 5);
    const int m = 2 + int(rng() % (n - 1));
    const int l = 1 + int(rng() % (m - 1));
    const SymMatrix s = sample_cone_matrix(n, m, rng);
    CHECK(maclaurin_margin(s, l, m) >= -1e-10);
  }
}

TEST_CASE("monotonicity margin") {
  CHECK(monotonicity_margin(diag3(1, 2, 3), SymMatrix::identity(3), 2, 1) ==
        doctest::Approx(26.0 / 9.0 - 11.0 / 6.0).epsilon(1e-12));

  // S0 -> 0 gives a vanishing margin
  const SymMatrix tiny(1e-9 * Eigen::MatrixXd::Identity(3, 3));
  CHECK(std::abs(monotonicity_margin(diag3(1, 2, 3), tiny, 2, 1)) < 1e-8);

  Eigen::MatrixXd notpsd(3, 3);
  notpsd << 1, 0, 0, 0, -1, 0, 0, 0, 1;
  CHECK_THROWS_AS(monotonicity_margin(diag3(1, 2, 3), SymMatrix(notpsd), 2, 1),
                  std::invalid_argument);

  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 2 + int(rng() % 5);
    const int m = 1 + int(rng() % n);
    const int l = int(rng() % m);
    const SymMatrix s = sample_cone_matrix(n, m, rng);
    const SymMatrix s0 = sample_psd_matrix(n, rng);
    CHECK(monotonicity_margin(s, s0, m, l) > 0.0);
  }
}

TEST_CASE("cone sampler reports a sane acceptance rate") {
  std::mt19937_64 rng(47);
  ConeSampleStats stats;
  for (int rep = 0; rep < 200; ++rep) sample_cone_matrix(4, 3, rng, &stats);
  CHECK(stats.accepted == 200);
  CHECK(stats.acceptance_rate() > 0.05);
  MESSAGE("K_3 acceptance rate at n=4: ", stats.acceptance_rate());
}
