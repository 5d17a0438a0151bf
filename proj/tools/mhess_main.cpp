// Command-line front end: evaluate m-traces, solve the Dirichlet problems,
// run the verification suites, and emit plot-ready data.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mhess/harness.hpp"
#include "mhess/report_io.hpp"
#include "mhess/symfunc.hpp"

namespace {

using mhess::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGate = 3;
constexpr int kExitDiverged = 4;

struct CommonOpts {
  std::string domain = "ball";
  int n = 3;
  int m = 2;
  int l = 0;
  double radius = 1.0;
  double axis_a = 2.0;
  double axis_b = 1.0;
  std::string grid;      // "N" (radial) or "NR,NTHETA" (2-D)
  int nodes = 129;       // radial carriers
  int grid_nr = 65;      // 2-D carriers
  int grid_ntheta = 64;
  double psi = 1.0;
  double tol = 0.0;      // solver residual target; 0 keeps the defaults
  int max_iterations = 100;
  int max_halvings = 30;
  int samples = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::string config_path;

  void resolve_grid() {
    if (grid.empty()) return;
    const auto comma = grid.find(',');
    if (comma == std::string::npos) {
      nodes = std::stoi(grid);
    } else {
      grid_nr = std::stoi(grid.substr(0, comma));
      grid_ntheta = std::stoi(grid.substr(comma + 1));
    }
  }
};

// --config JSON mirrors the flags; explicitly passed flags win
void apply_config(const Json& j, CLI::App* cmd, CommonOpts* o) {
  auto set_if_unset = [&](const char* flag, auto* target) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    const bool given = opt != nullptr && opt->count() > 0;
    const std::string key = std::string(flag).substr(2);
    if (!given && j.contains(key)) *target = j.at(key).get<std::decay_t<decltype(*target)>>();
  };
  set_if_unset("--domain", &o->domain);
  set_if_unset("--n", &o->n);
  set_if_unset("--m", &o->m);
  set_if_unset("--l", &o->l);
  set_if_unset("--radius", &o->radius);
  set_if_unset("--a", &o->axis_a);
  set_if_unset("--b", &o->axis_b);
  set_if_unset("--grid", &o->grid);
  set_if_unset("--nodes", &o->nodes);
  set_if_unset("--grid-nr", &o->grid_nr);
  set_if_unset("--grid-ntheta", &o->grid_ntheta);
  set_if_unset("--psi", &o->psi);
  set_if_unset("--tol", &o->tol);
  set_if_unset("--max-iterations", &o->max_iterations);
  set_if_unset("--max-halvings", &o->max_halvings);
  set_if_unset("--samples", &o->samples);
  set_if_unset("--seed", &o->seed);
  set_if_unset("--out", &o->out);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

mhess::Domain domain_from_opts(const CommonOpts& o) {
  if (o.domain == "ball") return mhess::Domain::ball(o.n, o.radius);
  if (o.domain == "disc") return mhess::Domain::disc(o.radius);
  if (o.domain == "ellipse") return mhess::Domain::ellipse(o.axis_a, o.axis_b);
  throw std::invalid_argument("unknown domain kind: " + o.domain);
}

void add_common_flags(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--domain", o->domain, "domain kind: ball | disc | ellipse");
  cmd->add_option("--n", o->n, "space dimension");
  cmd->add_option("--m", o->m, "operator order m");
  cmd->add_option("--l", o->l, "quotient order l (< m; 0 = pure m-Hessian)");
  cmd->add_option("--radius", o->radius, "ball/disc radius");
  cmd->add_option("--a", o->axis_a, "ellipse semi-axis a");
  cmd->add_option("--b", o->axis_b, "ellipse semi-axis b");
  cmd->add_option("--grid", o->grid, "grid size: N (radial) or NR,NTHETA (2-D)");
  cmd->add_option("--nodes", o->nodes, "radial grid nodes");
  cmd->add_option("--grid-nr", o->grid_nr, "2-D radial node count");
  cmd->add_option("--grid-ntheta", o->grid_ntheta, "2-D angular node count (even)");
  cmd->add_option("--psi", o->psi, "constant right-hand side (> 0)");
  cmd->add_option("--tol", o->tol, "solver residual target (0 = default)");
  cmd->add_option("--max-iterations", o->max_iterations, "Newton iteration cap");
  cmd->add_option("--max-halvings", o->max_halvings, "line-search halvings per step");
  cmd->add_option("--samples", o->samples, "random samples per suite configuration");
  cmd->add_option("--seed", o->seed, "random seed");
  cmd->add_option("--out", o->out, "output path prefix / directory");
  cmd->add_option("--config", o->config_path, "JSON config file mirroring the flags");
}

// ---------------------------------------------------------------- trace ---

int cmd_trace(const std::string& matrix_inline, const std::string& matrix_file,
              std::optional<int> m_opt, bool as_json) {
  Json jm = matrix_file.empty() ? Json::parse(matrix_inline) : load_json_file(matrix_file);
  const auto rows = jm.get<std::vector<std::vector<double>>>();
  const int n = static_cast<int>(rows.size());
  mhess::require(n >= 2, "matrix must be at least 2x2");
  Eigen::MatrixXd mat(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[std::size_t(i)].size()) != n)
      throw std::invalid_argument("matrix rows must all have length n");
    for (int j = 0; j < n; ++j) mat(i, j) = rows[std::size_t(i)][std::size_t(j)];
  }
  const mhess::SymMatrix s(mat);
  const int m = m_opt.value_or(n);
  const mhess::TraceVector tv = mhess::trace_vector(s);
  const mhess::SymMatrix grad = mhess::m_trace_gradient(s, m);
  const mhess::ConeVerdict verdict = mhess::cone_membership(s, m);

  if (as_json) {
    Json out;
    out["schema_version"] = mhess::kSchemaVersion;
    out["n"] = n;
    out["m"] = m;
    out["traces"] = tv.values;
    Json jg = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int j = 0; j < n; ++j) row.push_back(grad(i, j));
      jg.push_back(row);
    }
    out["gradient"] = std::move(jg);
    out["cone"] = {{"m", verdict.m}, {"member", verdict.member}, {"margin", verdict.margin}};
    if (verdict.first_failure) out["cone"]["first_failure"] = *verdict.first_failure;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }

  std::cout << "traces T_0..T_" << n << ":";
  for (double t : tv.values) std::cout << " " << t;
  std::cout << "\ngradient of T_" << m << ":\n";
  for (int i = 0; i < n; ++i) {
    std::cout << " ";
    for (int j = 0; j < n; ++j) std::cout << " " << grad(i, j);
    std::cout << "\n";
  }
  std::cout << "cone K_" << m << ": " << (verdict.member ? "member" : "not a member")
            << " (margin " << verdict.margin;
  if (verdict.first_failure) std::cout << ", first failure at p=" << *verdict.first_failure;
  std::cout << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- solve ---

void print_integral_table(const std::vector<mhess::FunctionalValue>& table) {
  std::cout << "Hessian integrals:\n";
  for (const auto& fv : table) std::cout << "  " << fv.name << " = " << fv.value << "\n";
}

int cmd_solve(const CommonOpts& o) {
  const mhess::Domain domain = domain_from_opts(o);
  mhess::require(o.psi > 0.0, "psi must be positive");
  mhess::NewtonOptions nopts;
  nopts.tolerance = o.tol;
  nopts.max_iterations = o.max_iterations;
  nopts.max_halvings = o.max_halvings;

  const std::string prefix = o.out.empty() ? "solution" : o.out;
  std::vector<mhess::FunctionalValue> table;
  Json meta;
  meta["schema_version"] = mhess::kSchemaVersion;
  meta["domain"] = mhess::to_json(domain);
  meta["m"] = o.m;
  meta["l"] = o.l;

  if (domain.is_two_dimensional() && domain.kind() != mhess::Domain::Kind::Ball) {
    const double psi = o.psi;
    const mhess::DirichletProblem prob(domain, 2, o.m, o.l,
                                       [psi](double, double) { return psi; });
    const mhess::GridSolution sol =
        mhess::solve_grid_newton(prob, o.grid_nr, o.grid_ntheta, nopts);
    std::cout << "solved: residual_inf=" << sol.residual_inf
              << " iterations=" << sol.iterations
              << " admissible=" << (sol.admissibility.admissible ? "yes" : "no")
              << " branch=" << sol.branch << "\n";
    for (int p = 0; p <= o.m; ++p) {
      mhess::FunctionalValue fv;
      fv.name = "I_" + std::to_string(p);
      fv.value = mhess::hessian_integral(sol.w, p);
      fv.m = p;
      fv.grid_spec = domain.describe() + " " + std::to_string(o.grid_nr) + "x" +
                     std::to_string(o.grid_ntheta);
      fv.admissible_input = sol.admissibility.admissible;
      table.push_back(fv);
    }
    print_integral_table(table);
    Json sj = mhess::to_json(sol.w);
    meta["residual_inf"] = sol.residual_inf;
    meta["iterations"] = sol.iterations;
    meta["admissibility"] = mhess::to_json(sol.admissibility);
    Json jt = Json::array();
    for (const auto& fv : table) jt.push_back(mhess::to_json(fv));
    meta["integrals"] = std::move(jt);
    sj["meta"] = std::move(meta);
    mhess::atomic_write(prefix + ".json", sj.dump(2) + "\n");
    mhess::atomic_write(prefix + ".csv", mhess::grid_csv(sol.w));
  } else if (o.l == 0) {
    const double psi = o.psi;
    const mhess::RadialSolution sol = mhess::solve_radial_ode(
        o.n, o.m, [psi](double) { return psi; }, o.radius, o.nodes, nopts);
    std::cout << "solved: residual_inf=" << sol.residual_inf
              << " iterations=" << sol.iterations
              << " admissible=" << (sol.admissibility.admissible ? "yes" : "no")
              << " branch=" << sol.branch << "\n";
    for (int p = 0; p <= o.m; ++p) {
      mhess::FunctionalValue fv;
      fv.name = "I_" + std::to_string(p);
      fv.value = mhess::hessian_integral(sol.w, o.n, p);
      fv.m = p;
      fv.grid_spec = domain.describe() + " N=" + std::to_string(o.nodes);
      fv.admissible_input = sol.admissibility.admissible;
      table.push_back(fv);
    }
    print_integral_table(table);
    Json sj = mhess::to_json(sol.w);
    meta["residual_inf"] = sol.residual_inf;
    meta["iterations"] = sol.iterations;
    meta["admissibility"] = mhess::to_json(sol.admissibility);
    Json jt = Json::array();
    for (const auto& fv : table) jt.push_back(mhess::to_json(fv));
    meta["integrals"] = std::move(jt);
    sj["meta"] = std::move(meta);
    mhess::atomic_write(prefix + ".json", sj.dump(2) + "\n");
    mhess::atomic_write(prefix + ".csv", mhess::radial_csv(sol.w));
  } else {
    mhess::require(o.psi == 1.0, "radial quotient solves (l >= 1) support psi = 1 only");
    const auto [a, w] = mhess::solve_radial_quadratic(o.n, o.m, o.l, o.radius, o.nodes);
    const double res = mhess::quotient_solution_residual(w, o.n, o.m, o.l);
    const mhess::AdmissibilityReport adm = mhess::grid_admissibility(w, o.n, o.m);
    std::cout << "solved: closed-form quadratic a=" << a << " residual_inf=" << res << "\n";
    for (int p = 0; p <= o.m; ++p) {
      mhess::FunctionalValue fv;
      fv.name = "I_" + std::to_string(p);
      fv.value = mhess::hessian_integral(w, o.n, p);
      fv.m = p;
      fv.grid_spec = domain.describe() + " N=" + std::to_string(o.nodes);
      fv.admissible_input = adm.admissible;
      table.push_back(fv);
    }
    print_integral_table(table);
    Json sj = mhess::to_json(w);
    meta["residual_inf"] = res;
    meta["coefficient"] = a;
    meta["admissibility"] = mhess::to_json(adm);
    Json jt = Json::array();
    for (const auto& fv : table) jt.push_back(mhess::to_json(fv));
    meta["integrals"] = std::move(jt);
    sj["meta"] = std::move(meta);
    mhess::atomic_write(prefix + ".json", sj.dump(2) + "\n");
    mhess::atomic_write(prefix + ".csv", mhess::radial_csv(w));
  }
  std::cout << "wrote " << prefix << ".json and " << prefix << ".csv\n";
  return kExitOk;
}

// --------------------------------------------------------------- verify ---

int cmd_verify(const std::string& suite, const CommonOpts& o, bool n_given) {
  mhess::VerifyConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.radial_nodes = o.nodes;
  cfg.grid_nr = o.grid_nr;
  cfg.grid_ntheta = o.grid_ntheta;
  cfg.radius = o.radius;
  if (n_given) {
    if (o.n == 2) {
      cfg.include_n3 = false;
    } else if (o.n == 3) {
      cfg.include_n2 = false;
    } else {
      throw std::invalid_argument("verify supports --n 2 or --n 3 (omit for both)");
    }
  }

  const mhess::VerifyResult result = mhess::run_verify_suite(suite, cfg);

  Json report;
  report["schema_version"] = mhess::kSchemaVersion;
  report["suite"] = suite;
  report["seed"] = o.seed;
  report["samples"] = o.samples;
  report["radial_nodes"] = cfg.radial_nodes;
  report["grid"] = {{"nr", cfg.grid_nr}, {"ntheta", cfg.grid_ntheta}};
  Json arr = Json::array();
  for (const auto& r : result.reports) arr.push_back(mhess::to_json(r));
  report["reports"] = std::move(arr);
  report["all_pass"] = result.all_pass;

  const std::string dir = o.out.empty() ? "verify_out" : o.out;
  const std::string report_path = dir + "/verify_report.json";
  mhess::atomic_write(report_path, report.dump(2) + "\n");
  mhess::atomic_write(dir + "/verify_summary.csv", mhess::reports_csv(result.reports));

  long passed = 0;
  for (const auto& r : result.reports)
    if (r.pass) ++passed;
  std::cout << "suite '" << suite << "': " << passed << "/" << result.reports.size()
            << " checks passed\n";
  std::cout << "reports written to " << report_path << "\n";
  if (!result.all_pass) {
    std::cout << "FAILED: see " << report_path << "\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}

// ------------------------------------------------------------- plotdata ---

int cmd_plotdata(const std::string& in_path, const std::string& out_path) {
  const Json j = load_json_file(in_path);
  std::ostringstream os;
  if (j.contains("kind") && j.at("kind") == "radial") {
    os << mhess::radial_csv(mhess::radial_from_json(j));
  } else if (j.contains("kind") && j.at("kind") == "grid2d") {
    os << mhess::grid_csv(mhess::grid_from_json(j));
  } else if (j.contains("reports")) {
    os << "index,margin\n";
    std::size_t idx = 0;
    for (const auto& r : j.at("reports")) {
      os << idx++ << "," << r.at("margin").get<double>() << "\n";
    }
  } else {
    throw std::invalid_argument("unrecognized input file: " + in_path);
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    mhess::atomic_write(out_path, os.str());
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"m-Hessian operator calculus: traces, cones, Dirichlet solvers and "
               "inequality verification"};
  app.require_subcommand(1);

  CLI::App* trace = app.add_subcommand("trace", "evaluate m-traces of a symmetric matrix");
  std::string matrix_inline, matrix_file;
  int trace_m = -1;
  bool trace_json = false;
  trace->add_option("--matrix", matrix_inline, "matrix as a JSON array of rows");
  trace->add_option("--matrix-file", matrix_file, "path to a JSON matrix file");
  trace->add_option("--m", trace_m, "order for gradient and cone verdict (default n)");
  trace->add_flag("--json", trace_json, "emit JSON");

  CLI::App* solve = app.add_subcommand("solve", "solve a Dirichlet problem");
  CommonOpts so;
  add_common_flags(solve, &so);

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  CommonOpts vo;
  std::string suite = "all";
  verify->add_option("suite", suite, "suite name or 'all'");
  add_common_flags(verify, &vo);

  CLI::App* plot = app.add_subcommand("plotdata", "convert solutions/reports to CSV columns");
  std::string plot_in, plot_out;
  plot->add_option("--in", plot_in, "input JSON file")->required();
  plot->add_option("--out", plot_out, "output CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (trace->parsed()) {
      if (matrix_inline.empty() && matrix_file.empty())
        throw std::invalid_argument("trace: provide --matrix or --matrix-file");
      std::optional<int> m_opt;
      if (trace_m >= 0) m_opt = trace_m;
      return cmd_trace(matrix_inline, matrix_file, m_opt, trace_json);
    }
    if (solve->parsed()) {
      if (!so.config_path.empty()) apply_config(load_json_file(so.config_path), solve, &so);
      so.resolve_grid();
      return cmd_solve(so);
    }
    if (verify->parsed()) {
      if (!vo.config_path.empty()) apply_config(load_json_file(vo.config_path), verify, &vo);
      vo.resolve_grid();
      const bool n_given = verify->get_option_no_throw("--n")->count() > 0 ||
                           (!vo.config_path.empty() &&
                            load_json_file(vo.config_path).contains("n"));
      return cmd_verify(suite, vo, n_given);
    }
    if (plot->parsed()) {
      return cmd_plotdata(plot_in, plot_out);
    }
  } catch (const mhess::ConvexityGateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGate;
  } catch (const mhess::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (last residual " << e.last_residual << ")\n";
    return kExitDiverged;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
