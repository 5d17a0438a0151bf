#include "mhess/harness.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "mhess/admissibility.hpp"
#include "mhess/sampling.hpp"

namespace mhess {

namespace {

std::string fmt_res(double r) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << r;
  return os.str();
}

}  // namespace

RadialExtremal make_radial_extremal(int n, int m, int l, double radius, int n_nodes) {
  std::ostringstream prov;
  RadialExtremal ex{RadialFunction(radius, std::vector<double>(std::size_t(n_nodes), 0.0)),
                    n, m, l, 0.0, ""};
  if (l == 0) {
    RadialSolution sol = solve_radial_ode(n, m, [](double) { return 1.0; }, radius, n_nodes);
    ex.w = std::move(sol.w);
    prov << "w=radial_ode(n=" << n << ",m=" << m << ",l=0,N=" << n_nodes << ")";
  } else {
    auto [a, w] = solve_radial_quadratic(n, m, l, radius, n_nodes);
    ex.w = std::move(w);
    prov << "w=radial_quadratic(n=" << n << ",m=" << m << ",l=" << l << ",a=" << a
         << ",N=" << n_nodes << ")";
  }
  ex.residual = quotient_solution_residual(ex.w, n, m, l);
  prov << ",res=" << fmt_res(ex.residual);
  ex.provenance = prov.str();
  return ex;
}

GridExtremal make_grid_extremal(const Domain& domain, int m, int l, int nr, int ntheta) {
  const DirichletProblem prob(domain, 2, m, l, [](double, double) { return 1.0; });
  GridSolution sol = solve_grid_newton(prob, nr, ntheta);
  GridExtremal ex{std::move(sol.w), m, l, 0.0, ""};
  ex.residual = quotient_solution_residual(ex.w, m, l);
  std::ostringstream prov;
  prov << "w=grid_newton(" << domain.describe() << ",m=" << m << ",l=" << l << ",nr=" << nr
       << ",ntheta=" << ntheta << "),res=" << fmt_res(ex.residual);
  ex.provenance = prov.str();
  return ex;
}

RadialFunction random_radial_test_function(double radius, int n_nodes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> base(0.7, 1.4);
  std::uniform_real_distribution<double> mag(0.03, 0.15);
  std::uniform_int_distribution<int> coin(0, 1);
  const double s0 = base(rng);
  double c[3];
  for (double& ck : c) ck = (coin(rng) ? 1.0 : -1.0) * mag(rng);
  return RadialFunction::sample(radius, n_nodes, [=](double r) {
    const double s = r / radius;
    double mod = s0;
    double p = 1.0;
    for (int k = 0; k < 3; ++k) {
      p *= s * s;
      mod += c[k] * p;
    }
    return (r * r - radius * radius) / 2.0 * mod;
  });
}

GridFunction2D random_grid_test_function(const Domain& domain, int nr, int ntheta,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> base(0.7, 1.4);
  std::uniform_real_distribution<double> mag(0.03, 0.10);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> coin(0, 1);
  const double s0 = base(rng);
  double c[3], ph[3];
  for (int q = 0; q < 3; ++q) {
    c[q] = (coin(rng) ? 1.0 : -1.0) * mag(rng);
    ph[q] = phase(rng);
  }

  GridFunction2D u(domain, nr, ntheta);
  const PolarGrid& g = u.grid();
  const double rref = domain.reference_radius();
  auto value = [&](double rho, double theta) {
    double mod = s0;
    for (int q = 1; q <= 3; ++q)
      mod += c[q - 1] * std::pow(rho / rref, q) * std::cos(q * theta + ph[q - 1]);
    return (rho * rho - rref * rref) / 2.0 * mod;
  };
  u.at(0, 0) = value(0.0, 0.0);
  for (int i = 1; i < nr; ++i)
    for (int j = 0; j < ntheta; ++j) u.at(i, j) = value(g.rho(i), g.theta(j));
  return u;
}

RadialFunction random_admissible_radial(int n, int m, double radius, int n_nodes,
                                        std::mt19937_64& rng, int max_tries) {
  for (int t = 0; t < max_tries; ++t) {
    RadialFunction u = random_radial_test_function(radius, n_nodes, rng);
    if (grid_admissibility(u, n, m).admissible) return u;
  }
  throw std::runtime_error("random_admissible_radial: rejection sampling exhausted");
}

GridFunction2D random_admissible_grid(const Domain& domain, int m, int nr, int ntheta,
                                      std::mt19937_64& rng, int max_tries) {
  for (int t = 0; t < max_tries; ++t) {
    GridFunction2D u = random_grid_test_function(domain, nr, ntheta, rng);
    if (grid_admissibility(u, m).admissible) return u;
  }
  throw std::runtime_error("random_admissible_grid: rejection sampling exhausted");
}

const std::vector<std::string> kVerifySuites = {
    "maclaurin", "poincare", "isoperimetric", "composition", "anpo",
    "zero_l",    "p2",       "dilation",      "w2",          "sharpness",
    "all"};

namespace {

struct SuiteRunner {
  const VerifyConfig& cfg;
  std::mt19937_64 rng;
  std::vector<InequalityReport> out;

  // cached extremals per (n, m, l)
  std::map<std::tuple<int, int, int>, RadialExtremal> radial_cache;
  std::map<std::pair<int, int>, GridExtremal> grid_cache;

  explicit SuiteRunner(const VerifyConfig& c) : cfg(c), rng(c.seed) {}

  const RadialExtremal& radial_extremal(int n, int m, int l) {
    auto key = std::make_tuple(n, m, l);
    auto it = radial_cache.find(key);
    if (it == radial_cache.end()) {
      it = radial_cache
               .emplace(key, make_radial_extremal(n, m, l, cfg.radius, cfg.radial_nodes))
               .first;
    }
    return it->second;
  }

  const GridExtremal& grid_extremal(int m, int l) {
    auto key = std::make_pair(m, l);
    auto it = grid_cache.find(key);
    if (it == grid_cache.end()) {
      it = grid_cache
               .emplace(key, make_grid_extremal(Domain::disc(cfg.radius), m, l, cfg.grid_nr,
                                                cfg.grid_ntheta))
               .first;
    }
    return it->second;
  }

  std::vector<std::array<int, 3>> radial_configs() const {
    if (!cfg.include_n3) return {};
    return {{3, 2, 0}, {3, 2, 1}, {3, 3, 0}, {3, 3, 1}, {3, 3, 2}};
  }
  std::vector<std::array<int, 2>> grid_configs() const {
    if (!cfg.include_n2) return {};
    return {{2, 0}, {2, 1}};
  }

  void tag(InequalityReport& rep, int sample) {
    rep.inputs += ";u=sample#" + std::to_string(sample) + "(seed=" + std::to_string(cfg.seed) + ")";
    out.push_back(std::move(rep));
  }

  void run_maclaurin() {
    // matrix-level property sweep over random cone samples
    std::uniform_int_distribution<int> dim(2, 6);
    double min_margin = std::numeric_limits<double>::infinity();
    long violations = 0;
    for (int s = 0; s < cfg.samples; ++s) {
      const int n = dim(rng);
      const int m = 2 + int(rng() % std::uint64_t(n - 1));
      const int l = 1 + int(rng() % std::uint64_t(m - 1));
      const SymMatrix mat = sample_cone_matrix(n, m, rng);
      const double margin = maclaurin_margin(mat, l, m);
      min_margin = std::min(min_margin, margin);
      if (margin < -1e-10) ++violations;
    }
    InequalityReport rep;
    rep.name = "maclaurin";
    rep.m = 0;
    rep.l = 0;
    rep.lhs = min_margin;
    rep.rhs = 0.0;
    rep.margin = min_margin;
    rep.orientation = "lhs-rhs";
    rep.tolerance = 1e-10;
    rep.pass = violations == 0;
    rep.inputs = "cone samples=" + std::to_string(cfg.samples) +
                 ",seed=" + std::to_string(cfg.seed);
    out.push_back(std::move(rep));
  }

  void run_poincare() {
    for (const auto& [n, m, l] : radial_configs()) {
      const RadialExtremal& ex = radial_extremal(n, m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        RadialFunction u = random_admissible_radial(n, m, cfg.radius, cfg.radial_nodes, rng);
        InequalityReport rep = check_poincare(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
    for (const auto& [m, l] : grid_configs()) {
      const GridExtremal& ex = grid_extremal(m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        GridFunction2D u = random_admissible_grid(Domain::disc(cfg.radius), m, cfg.grid_nr,
                                                  cfg.grid_ntheta, rng);
        InequalityReport rep = check_poincare(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
  }

  void run_isoperimetric() {
    for (const auto& [n, m, l] : radial_configs()) {
      const RadialExtremal& ex = radial_extremal(n, m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        RadialFunction u = random_admissible_radial(n, m, cfg.radius, cfg.radial_nodes, rng);
        InequalityReport rep = check_isoperimetric(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
    for (const auto& [m, l] : grid_configs()) {
      const GridExtremal& ex = grid_extremal(m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        GridFunction2D u = random_admissible_grid(Domain::disc(cfg.radius), m, cfg.grid_nr,
                                                  cfg.grid_ntheta, rng);
        InequalityReport rep = check_isoperimetric(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
  }

  void run_anpo() {
    for (const auto& [n, m, l] : radial_configs()) {
      const RadialExtremal& ex = radial_extremal(n, m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        RadialFunction u = random_radial_test_function(cfg.radius, cfg.radial_nodes, rng);
        InequalityReport rep = check_anpo(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
    for (const auto& [m, l] : grid_configs()) {
      const GridExtremal& ex = grid_extremal(m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        GridFunction2D u =
            random_grid_test_function(Domain::disc(cfg.radius), cfg.grid_nr, cfg.grid_ntheta, rng);
        InequalityReport rep = check_anpo(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
  }

  void run_zero_l() {
    for (const auto& [n, m, l] : radial_configs()) {
      if (l != 0) continue;
      const RadialExtremal& ex = radial_extremal(n, m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        RadialFunction u = random_radial_test_function(cfg.radius, cfg.radial_nodes, rng);
        InequalityReport rep = check_zero_l(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
    for (const auto& [m, l] : grid_configs()) {
      if (l != 0) continue;
      const GridExtremal& ex = grid_extremal(m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        GridFunction2D u =
            random_grid_test_function(Domain::disc(cfg.radius), cfg.grid_nr, cfg.grid_ntheta, rng);
        InequalityReport rep = check_zero_l(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
  }

  void run_p2() {
    for (const auto& [n, m, l] : radial_configs()) {
      if (m != n || l != 1) continue;
      const RadialExtremal& ex = radial_extremal(n, m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        RadialFunction u = random_radial_test_function(cfg.radius, cfg.radial_nodes, rng);
        InequalityReport rep = check_p2(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
    for (const auto& [m, l] : grid_configs()) {
      if (m != 2 || l != 1) continue;
      const GridExtremal& ex = grid_extremal(m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        GridFunction2D u =
            random_grid_test_function(Domain::disc(cfg.radius), cfg.grid_nr, cfg.grid_ntheta, rng);
        InequalityReport rep = check_p2(u, ex, cfg.tolerance);
        tag(rep, s);
      }
    }
  }

  void run_dilation() {
    const double mus[2] = {0.5, 4.0};
    for (const auto& [n, m, l] : radial_configs()) {
      const RadialExtremal& ex = radial_extremal(n, m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        RadialFunction u = random_radial_test_function(cfg.radius, cfg.radial_nodes, rng);
        InequalityReport rep = check_dilation_invariance(u, ex, mus[s % 2], cfg.tolerance);
        tag(rep, s);
      }
    }
    for (const auto& [m, l] : grid_configs()) {
      const GridExtremal& ex = grid_extremal(m, l);
      for (int s = 0; s < cfg.samples; ++s) {
        GridFunction2D u =
            random_grid_test_function(Domain::disc(cfg.radius), cfg.grid_nr, cfg.grid_ntheta, rng);
        InequalityReport rep = check_dilation_invariance(u, ex, mus[s % 2], cfg.tolerance);
        tag(rep, s);
      }
    }
  }

  void run_w2() {
    for (const auto& [n, m, l] : radial_configs()) {
      if (l < 1) continue;
      InequalityReport rep =
          check_w2(radial_extremal(n, m, l), radial_extremal(n, m, 0), cfg.tolerance);
      out.push_back(std::move(rep));
    }
    for (const auto& [m, l] : grid_configs()) {
      if (l < 1) continue;
      InequalityReport rep = check_w2(grid_extremal(m, l), grid_extremal(m, 0), cfg.tolerance);
      out.push_back(std::move(rep));
    }
  }

  void run_composition() {
    if (cfg.include_n3) {
      const std::vector<std::array<int, 3>> triples = {
          {2, 1, 0}, {3, 1, 0}, {3, 2, 0}, {3, 2, 1}};
      for (const auto& [m, p, l] : triples) {
        InequalityReport rep =
            check_composition(radial_extremal(3, m, l), radial_extremal(3, m, p),
                              radial_extremal(3, p, l), cfg.tolerance);
        out.push_back(std::move(rep));
      }
    }
    if (cfg.include_n2) {
      InequalityReport rep = check_composition(grid_extremal(2, 0), grid_extremal(2, 1),
                                               grid_extremal(1, 0), cfg.tolerance);
      out.push_back(std::move(rep));
    }
  }

  // every check evaluated at u = w: the sharp-constant equality witness
  void run_sharpness() {
    for (const auto& [n, m, l] : radial_configs()) {
      const RadialExtremal& ex = radial_extremal(n, m, l);
      auto push = [&](InequalityReport rep) {
        rep.inputs += ";u=w (extremal)";
        out.push_back(std::move(rep));
      };
      push(check_poincare(ex.w, ex, cfg.tolerance));
      push(check_isoperimetric(ex.w, ex, cfg.tolerance));
      push(check_anpo(ex.w, ex, cfg.tolerance));
      push(check_dilation_invariance(ex.w, ex, 2.0, cfg.tolerance));
      if (l == 0) push(check_zero_l(ex.w, ex, cfg.tolerance));
      if (m == n && l == 1) push(check_p2(ex.w, ex, cfg.tolerance));
    }
    for (const auto& [m, l] : grid_configs()) {
      const GridExtremal& ex = grid_extremal(m, l);
      auto push = [&](InequalityReport rep) {
        rep.inputs += ";u=w (extremal)";
        out.push_back(std::move(rep));
      };
      push(check_poincare(ex.w, ex, cfg.tolerance));
      push(check_isoperimetric(ex.w, ex, cfg.tolerance));
      push(check_anpo(ex.w, ex, cfg.tolerance));
      push(check_dilation_invariance(ex.w, ex, 2.0, cfg.tolerance));
      if (l == 0) push(check_zero_l(ex.w, ex, cfg.tolerance));
      if (m == 2 && l == 1) push(check_p2(ex.w, ex, cfg.tolerance));
    }
    run_composition();
    run_w2();
  }
};

}  // namespace

VerifyResult run_verify_suite(const std::string& suite, const VerifyConfig& config) {
  SuiteRunner runner(config);
  const bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* name) { return all || suite == name; };

  if (want("maclaurin")) runner.run_maclaurin(), known = true;
  if (want("poincare")) runner.run_poincare(), known = true;
  if (want("isoperimetric")) runner.run_isoperimetric(), known = true;
  if (want("composition")) runner.run_composition(), known = true;
  if (want("anpo")) runner.run_anpo(), known = true;
  if (want("zero_l")) runner.run_zero_l(), known = true;
  if (want("p2")) runner.run_p2(), known = true;
  if (want("dilation")) runner.run_dilation(), known = true;
  if (want("w2")) runner.run_w2(), known = true;
  if (want("sharpness")) runner.run_sharpness(), known = true;
  require(known, "run_verify_suite: unknown suite '" + suite + "'");

  VerifyResult result;
  result.reports = std::move(runner.out);
  for (const auto& r : result.reports) result.all_pass = result.all_pass && r.pass;
  return result;
}

}  // namespace mhess
