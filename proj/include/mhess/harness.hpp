#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mhess/inequalities.hpp"
#include "mhess/solver.hpp"

namespace mhess {

// Extremal builders: the radial quotient solution comes from the ODE solver
// for l = 0 and from the verified quadratic ansatz for l >= 1; disc
// extremals come from the 2-D Newton solver.
RadialExtremal make_radial_extremal(int n, int m, int l, double radius, int n_nodes);
GridExtremal make_grid_extremal(const Domain& domain, int m, int l, int nr, int ntheta);

// Random zero-boundary test functions: a base bowl modulated by low-order
// even polynomial (radial) or harmonic (grid) perturbations.
RadialFunction random_radial_test_function(double radius, int n_nodes, std::mt19937_64& rng);
GridFunction2D random_grid_test_function(const Domain& domain, int nr, int ntheta,
                                         std::mt19937_64& rng);

// Rejection-filtered variants for checks that need admissible inputs.
RadialFunction random_admissible_radial(int n, int m, double radius, int n_nodes,
                                        std::mt19937_64& rng, int max_tries = 500);
GridFunction2D random_admissible_grid(const Domain& domain, int m, int nr, int ntheta,
                                      std::mt19937_64& rng, int max_tries = 500);

struct VerifyConfig {
  int samples = 100;
  std::uint64_t seed = 0;
  int radial_nodes = 129;
  int grid_nr = 65;
  int grid_ntheta = 64;
  double radius = 1.0;
  bool include_n2 = true;
  bool include_n3 = true;
  ToleranceModel tolerance;
};

extern const std::vector<std::string> kVerifySuites;  // named suites + "all"

struct VerifyResult {
  std::vector<InequalityReport> reports;
  bool all_pass = true;
};

// Runs one named suite ("maclaurin", "poincare", "isoperimetric",
// "composition", "anpo", "zero_l", "p2", "dilation", "w2", "sharpness") or
// "all". Configurations: (m,l) over {(2,0),(2,1)} on the disc for n = 2 and
// {(2,0),(2,1),(3,0),(3,1),(3,2)} on the ball for n = 3 (radial carriers).
VerifyResult run_verify_suite(const std::string& suite, const VerifyConfig& config);

}  // namespace mhess
