// Command-line driver: single solves, convergence studies, verification.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fracfem/manufactured.hpp"
#include "fracfem/norms.hpp"
#include "fracfem/ocp.hpp"
#include "fracfem/verification.hpp"

namespace fs = std::filesystem;
using namespace fracfem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitOracle = 4;

struct RunConfig {
  std::string problem = "example1";
  double alpha = 1.3;
  double gamma = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double v1 = -3.0;
  double v2 = -0.1;
  std::vector<int> mesh_sizes;
  double tol = 1e-12;
  int max_iter = 500;
  double relaxation = 1.0;
  int n_transverse = 4;
  int n_axial = 6;
  std::string out_dir;

  QuadratureSpec quad() const { return {n_transverse, n_axial}; }
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// Flat `key = value` config file mirroring the CLI flags.
void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "problem") cfg.problem = value;
      else if (key == "alpha") cfg.alpha = std::stod(value);
      else if (key == "gamma") cfg.gamma = std::stod(value);
      else if (key == "kappa1") cfg.kappa1 = std::stod(value);
      else if (key == "kappa2") cfg.kappa2 = std::stod(value);
      else if (key == "v1") cfg.v1 = std::stod(value);
      else if (key == "v2") cfg.v2 = std::stod(value);
      else if (key == "nx") cfg.mesh_sizes = parse_int_list(value);
      else if (key == "tol") cfg.tol = std::stod(value);
      else if (key == "max_iter") cfg.max_iter = std::stoi(value);
      else if (key == "relaxation") cfg.relaxation = std::stod(value);
      else if (key == "n_transverse") cfg.n_transverse = std::stoi(value);
      else if (key == "n_axial") cfg.n_axial = std::stoi(value);
      else if (key == "out") cfg.out_dir = value;
      else throw ConfigError(path + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }
}

ManufacturedCase make_case(const RunConfig& cfg) {
  if (cfg.problem != "example1")
    throw ConfigError("unknown problem '" + cfg.problem +
                      "' (only the manufactured case 'example1' is built in)");
  if (cfg.v1 != -3.0 || cfg.v2 != -0.1)
    throw ConfigError("example1 fixes the control bounds to [-3, -0.1]");
  return ManufacturedCase(cfg.alpha, cfg.kappa1, cfg.kappa2, cfg.gamma);
}

fs::path resolve_outdir(const RunConfig& cfg) {
  std::string dir = cfg.out_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("FRACFEM_OUTDIR")) dir = env;
    else dir = "out";
  }
  fs::create_directories(dir);
  return dir;
}

void write_field_csv(const fs::path& path, const Mesh& mesh, const DiscreteField& f) {
  std::ofstream out(path);
  out.precision(17);
  out << std::scientific << "x,y,value\n";
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    Eigen::Vector2d p = mesh.node(n);
    out << p.x() << "," << p.y() << "," << f.node_value(n) << "\n";
  }
}

void write_control_csv(const fs::path& path, const OCPSolution& sol, const Domain& dom) {
  std::ofstream out(path);
  out.precision(17);
  out << std::scientific << "x,y,value\n";
  const int n = 101;  // fixed uniform sampling grid
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double x = dom.a + dom.width() * i / (n - 1);
      double y = dom.c + dom.height() * j / (n - 1);
      out << x << "," << y << "," << sol.control(x, y) << "\n";
    }
}

void write_iteration_log(const fs::path& path, const OCPSolution& sol) {
  std::ofstream out(path);
  out.precision(17);
  out << std::scientific << "iter,update_norm,cost\n";
  for (const auto& rec : sol.log)
    out << rec.iter << "," << rec.update_norm << "," << rec.cost << "\n";
}

struct MeshErrors {
  double err_q, err_p, err_u;
};

MeshErrors measure_errors(const ManufacturedCase& mc, const Mesh& mesh,
                          const OCPSolution& sol, const QuadratureSpec& quad) {
  FracOrder order(mc.alpha());
  MeshErrors e;
  e.err_q = l2_error(
      mesh, [&](double x, double y) { return sol.control(x, y); },
      [&](double x, double y) { return mc.q(x, y); });
  e.err_p = energy_error(mesh, sol.p_h, mc.exact_p(), order, mc.kappa1(), mc.kappa2(), quad);
  e.err_u = energy_error(mesh, sol.u_h, mc.exact_u(), order, mc.kappa1(), mc.kappa2(), quad);
  return e;
}

int cmd_solve(const RunConfig& cfg) {
  if (cfg.mesh_sizes.size() != 1)
    throw ConfigError("solve expects exactly one mesh size (--nx N)");
  ManufacturedCase mc = make_case(cfg);
  Mesh mesh(mc.domain(), cfg.mesh_sizes[0], cfg.mesh_sizes[0]);
  FixedPointOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.relaxation = cfg.relaxation;

  OCPSolution sol = fixed_point_solve(mc.problem(), mesh, cfg.quad(), opts);
  fs::path dir = resolve_outdir(cfg);
  write_field_csv(dir / "u_h.csv", mesh, sol.u_h);
  write_field_csv(dir / "p_h.csv", mesh, sol.p_h);
  write_control_csv(dir / "q_h.csv", sol, mc.domain());
  write_iteration_log(dir / "iterations.csv", sol);

  double cost = evaluate_cost(
      mesh, sol.u_h, [&](double x, double y) { return sol.control(x, y); },
      [&](double x, double y) { return mc.u_d(x, y); }, mc.gamma());
  MeshErrors err = measure_errors(mc, mesh, sol, cfg.quad());

  std::cout.precision(6);
  std::cout << std::scientific;
  std::cout << "problem=" << cfg.problem << " alpha=" << cfg.alpha
            << " nx=" << cfg.mesh_sizes[0] << " iterations=" << sol.iterations
            << " update_norm=" << sol.final_update_norm << "\n";
  std::cout << "cost=" << cost << "\n";
  std::cout << "err_q_L2=" << err.err_q << " err_p_eng=" << err.err_p
            << " err_u_eng=" << err.err_u << "\n";
  std::cout << "artifacts written to " << dir.string() << "\n";
  return 0;
}

int cmd_convergence(const RunConfig& cfg) {
  if (cfg.mesh_sizes.size() < 2)
    throw ConfigError("convergence needs at least two mesh sizes (--nx N1,N2,...)");
  ManufacturedCase mc = make_case(cfg);
  FixedPointOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.relaxation = cfg.relaxation;

  ConvergenceReport report;
  report.alpha = cfg.alpha;
  report.gamma = cfg.gamma;
  report.kappa1 = cfg.kappa1;
  report.kappa2 = cfg.kappa2;
  report.quad = cfg.quad();
  report.mesh_sizes = cfg.mesh_sizes;

  for (int nx : cfg.mesh_sizes) {
    Mesh mesh(mc.domain(), nx, nx);
    auto t0 = std::chrono::steady_clock::now();
    OCPSolution sol = fixed_point_solve(mc.problem(), mesh, cfg.quad(), opts);
    MeshErrors err = measure_errors(mc, mesh, sol, cfg.quad());
    auto t1 = std::chrono::steady_clock::now();

    ConvergenceRow row;
    row.h = mesh.h_leg();
    row.err_q = err.err_q;
    row.err_p = err.err_p;
    row.err_u = err.err_u;
    row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (!report.rows.empty()) {
      const auto& prev = report.rows.back();
      row.has_order = true;
      row.order_q = convergence_order(prev.err_q, row.err_q, prev.h, row.h);
      row.order_p = convergence_order(prev.err_p, row.err_p, prev.h, row.h);
      row.order_u = convergence_order(prev.err_u, row.err_u, prev.h, row.h);
    }
    report.rows.push_back(row);
  }

  fs::path dir = resolve_outdir(cfg);
  report.write_csv_file((dir / "convergence.csv").string());
  for (const char* var : {"q", "p", "u"}) {
    std::ostringstream name;
    name << "loglog_" << var << "_alpha_" << cfg.alpha << ".csv";
    std::ofstream out(dir / name.str());
    out.precision(16);
    out << std::scientific << "h,err\n";
    for (const auto& row : report.rows) {
      double e = var[0] == 'q' ? row.err_q : (var[0] == 'p' ? row.err_p : row.err_u);
      out << row.h << "," << e << "\n";
    }
  }

  report.write_csv(std::cout);
  std::cout << "artifacts written to " << dir.string() << "\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& only) {
  std::vector<CheckResult> results = run_verification(cfg.quad(), only);
  if (results.empty()) throw ConfigError("verify: no check matches prefix '" + only + "'");
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin FE solver for optimal control of 2D Riesz space-fractional PDEs"};
  app.require_subcommand(1);

  RunConfig flags;  // values given on the command line
  std::string config_path, only;
  std::string nx_arg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--problem", flags.problem, "problem name (example1)");
    sub->add_option("--alpha", flags.alpha, "fractional order in (1,2)");
    sub->add_option("--gamma", flags.gamma, "control penalty");
    sub->add_option("--kappa1", flags.kappa1, "x-direction diffusion coefficient");
    sub->add_option("--kappa2", flags.kappa2, "y-direction diffusion coefficient");
    sub->add_option("--v1", flags.v1, "control lower bound");
    sub->add_option("--v2", flags.v2, "control upper bound");
    sub->add_option("--nx", nx_arg, "mesh subdivisions, comma separated");
    sub->add_option("--tol", flags.tol, "fixed-point tolerance");
    sub->add_option("--max-iter", flags.max_iter, "fixed-point iteration cap");
    sub->add_option("--relaxation", flags.relaxation, "fixed-point damping in (0,1]");
    sub->add_option("--n-transverse", flags.n_transverse, "Gauss points per strip");
    sub->add_option("--n-axial", flags.n_axial, "Gauss points per subinterval");
    sub->add_option("--out", flags.out_dir, "output directory (or FRACFEM_OUTDIR)");
    return sub;
  };

  CLI::App* solve = add_common(app.add_subcommand("solve", "solve on one mesh"));
  CLI::App* conv = add_common(app.add_subcommand("convergence", "run a mesh refinement study"));
  CLI::App* verify = add_common(app.add_subcommand("verify", "run the oracle suite"));
  verify->add_option("--only", only, "restrict checks to a name prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    // explicit flags override config-file values
    auto* sub = app.get_subcommands().front();
    if (sub->count("--problem")) cfg.problem = flags.problem;
    if (sub->count("--alpha")) cfg.alpha = flags.alpha;
    if (sub->count("--gamma")) cfg.gamma = flags.gamma;
    if (sub->count("--kappa1")) cfg.kappa1 = flags.kappa1;
    if (sub->count("--kappa2")) cfg.kappa2 = flags.kappa2;
    if (sub->count("--v1")) cfg.v1 = flags.v1;
    if (sub->count("--v2")) cfg.v2 = flags.v2;
    if (sub->count("--nx")) cfg.mesh_sizes = parse_int_list(nx_arg);
    if (sub->count("--tol")) cfg.tol = flags.tol;
    if (sub->count("--max-iter")) cfg.max_iter = flags.max_iter;
    if (sub->count("--relaxation")) cfg.relaxation = flags.relaxation;
    if (sub->count("--n-transverse")) cfg.n_transverse = flags.n_transverse;
    if (sub->count("--n-axial")) cfg.n_axial = flags.n_axial;
    if (sub->count("--out")) cfg.out_dir = flags.out_dir;

    if (sub == solve) return cmd_solve(cfg);
    if (sub == conv) return cmd_convergence(cfg);
    if (sub == verify) return cmd_verify(cfg, only);
  } catch (const ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FixedPointDivergence& e) {
    std::cerr << "error: non-convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
