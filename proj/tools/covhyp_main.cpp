// Command-line front end: construct catalog systems, inspect states, run the
// verification suite, and drive 1D simulations. All numeric output uses 17
// significant digits so golden files are stable on IEEE-754 doubles.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covhyp/catalog.hpp"
#include "covhyp/errors.hpp"
#include "covhyp/format.hpp"
#include "covhyp/solver.hpp"
#include "covhyp/verify.hpp"

namespace {

using covhyp::fmt17;
using nlohmann::json;

struct SystemFlags {
  std::string system;
  covhyp::SystemParams params;
};

void add_system_flags(CLI::App* cmd, SystemFlags& f, bool require_system) {
  auto* s = cmd->add_option("--system", f.system, "catalog system name");
  if (require_system) s->required();
  cmd->add_option("--rho-star", f.params.rho_star, "reference density (default 1)");
  cmd->add_option("--sigma-bar", f.params.sigma_bar, "entropy scale (default 1)");
  cmd->add_option("--a", f.params.a, "representation constant a (default 1)");
  cmd->add_option("--c", f.params.c, "group velocity scale c (default 1)");
}

void reject_unknown_keys(const json& j, const std::string& prefix,
                         std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known)
      throw covhyp::InvalidParameter("config: unknown key '" + prefix + it.key() + "'");
  }
}

covhyp::State state_from_json(const json& j, const std::string& prefix) {
  reject_unknown_keys(j, prefix, {"rho", "J"});
  return covhyp::State{j.at("rho").get<double>(), j.at("J").get<double>()};
}

covhyp::Boundary boundary_from_name(const std::string& name) {
  if (name == "outflow") return covhyp::Boundary::outflow;
  if (name == "periodic") return covhyp::Boundary::periodic;
  throw covhyp::InvalidParameter("boundary must be 'outflow' or 'periodic', got '" + name + "'");
}

// ---- inspect ---------------------------------------------------------------

int run_inspect(const SystemFlags& sf, bool has_state, covhyp::State w, bool has_fiber,
                covhyp::FiberPoint fp) {
  if (has_state == has_fiber)
    throw covhyp::InvalidParameter(
        "inspect: give exactly one of (--rho, --J) or (--theta, --rho0)");
  covhyp::SystemDescriptor d = covhyp::make_descriptor(sf.system, sf.params);
  const covhyp::CovariantSystem& sys = d.system;

  if (has_fiber)
    w = sys.lift_state(fp);
  else
    fp = sys.project_state(w);

  const covhyp::EntropyVariables phi = sys.entropy_variables(w);
  const covhyp::Vec2 g = sys.thermo_flux(w);
  const covhyp::Vec2 f = sys.flux(w);
  const covhyp::Eigenpair ev = covhyp::eigenvalues(sys.flux_jacobian(w));
  const covhyp::ConvexityDiagnostics cd = sys.convexity_diagnostics(fp);
  const covhyp::ThermoPoint tp = covhyp::thermo_point(sys.datum(), sys.rep(), sys.group().c, fp.rho0);

  std::cout << "system=" << d.name << "\n";
  std::cout << "rho=" << fmt17(w.rho) << "\n";
  std::cout << "J=" << fmt17(w.J) << "\n";
  std::cout << "theta=" << fmt17(fp.theta) << "\n";
  std::cout << "rho0=" << fmt17(fp.rho0) << "\n";
  std::cout << "u=" << fmt17(sys.velocity(w)) << "\n";
  std::cout << "eta=" << fmt17(sys.entropy(w)) << "\n";
  std::cout << "eta_dual=" << fmt17(sys.dual_entropy(w)) << "\n";
  std::cout << "alpha=" << fmt17(phi.alpha) << "\n";
  std::cout << "beta=" << fmt17(phi.beta) << "\n";
  std::cout << "p0=" << fmt17(tp.p0) << "\n";
  std::cout << "f1=" << fmt17(f.x) << "\n";
  std::cout << "f2=" << fmt17(f.y) << "\n";
  std::cout << "g1=" << fmt17(g.x) << "\n";
  std::cout << "g2=" << fmt17(g.y) << "\n";
  std::cout << "lambda_min=" << fmt17(ev.lo) << "\n";
  std::cout << "lambda_max=" << fmt17(ev.hi) << "\n";
  std::cout << "delta=" << fmt17(sys.jacobian_delta(fp)) << "\n";
  std::cout << "det_hessian=" << fmt17(cd.det_hessian) << "\n";
  std::cout << "d2eta_drho2=" << fmt17(cd.d2eta_drho2) << "\n";
  return 0;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const SystemFlags& sf, std::uint64_t seed, long samples,
               const std::string& out_prefix, double fault_scale) {
  covhyp::SystemDescriptor d = covhyp::make_descriptor(sf.system, sf.params);
  if (fault_scale != 1.0) d.system = d.system.with_flux_fault(fault_scale);
  const covhyp::VerifyReport report = covhyp::run_suite(d, seed, samples);
  std::cout << report.text();
  if (!out_prefix.empty()) {
    std::ofstream txt(out_prefix + ".txt");
    if (!txt) throw covhyp::InvalidParameter("cannot open '" + out_prefix + ".txt'");
    txt << report.text();
    std::ofstream js(out_prefix + ".json");
    if (!js) throw covhyp::InvalidParameter("cannot open '" + out_prefix + ".json'");
    js << report.json();
  }
  return report.all_pass ? 0 : 1;
}

// ---- simulate --------------------------------------------------------------

struct SimSetup {
  SystemFlags sf;
  covhyp::Grid1D grid{0.0, 1.0, 200};
  covhyp::SimConfig cfg;
  std::string init_kind;
  covhyp::State left{}, right{}, base{};
  double x_split = 0.0;
  double rho_amplitude = 0.0, center = 0.0, width = 1.0;
};

void load_config(const std::string& path, SimSetup& s) {
  std::ifstream in(path);
  if (!in) throw covhyp::InvalidParameter("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw covhyp::InvalidParameter("config: " + std::string(e.what()));
  }
  reject_unknown_keys(j, "", {"system", "params", "grid", "sim", "initial"});
  if (j.contains("system")) s.sf.system = j.at("system").get<std::string>();
  if (j.contains("params")) {
    const json& p = j.at("params");
    reject_unknown_keys(p, "params.", {"rho_star", "sigma_bar", "a", "c"});
    if (p.contains("rho_star")) s.sf.params.rho_star = p.at("rho_star").get<double>();
    if (p.contains("sigma_bar")) s.sf.params.sigma_bar = p.at("sigma_bar").get<double>();
    if (p.contains("a")) s.sf.params.a = p.at("a").get<double>();
    if (p.contains("c")) s.sf.params.c = p.at("c").get<double>();
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown_keys(g, "grid.", {"x_min", "x_max", "n_cells"});
    if (g.contains("x_min")) s.grid.x_min = g.at("x_min").get<double>();
    if (g.contains("x_max")) s.grid.x_max = g.at("x_max").get<double>();
    if (g.contains("n_cells")) s.grid.n_cells = g.at("n_cells").get<long>();
  }
  if (j.contains("sim")) {
    const json& c = j.at("sim");
    reject_unknown_keys(c, "sim.", {"cfl", "t_end", "max_steps", "snapshot_stride", "boundary"});
    if (c.contains("cfl")) s.cfg.cfl = c.at("cfl").get<double>();
    if (c.contains("t_end")) s.cfg.t_end = c.at("t_end").get<double>();
    if (c.contains("max_steps")) s.cfg.max_steps = c.at("max_steps").get<long>();
    if (c.contains("snapshot_stride")) s.cfg.snapshot_stride = c.at("snapshot_stride").get<long>();
    if (c.contains("boundary")) s.cfg.boundary = boundary_from_name(c.at("boundary").get<std::string>());
  }
  if (j.contains("initial")) {
    const json& ic = j.at("initial");
    reject_unknown_keys(ic, "initial.",
                        {"kind", "left", "right", "x_split", "base", "rho_amplitude", "center",
                         "width"});
    s.init_kind = ic.at("kind").get<std::string>();
    if (s.init_kind == "riemann") {
      s.left = state_from_json(ic.at("left"), "initial.left.");
      s.right = state_from_json(ic.at("right"), "initial.right.");
      s.x_split = ic.at("x_split").get<double>();
    } else if (s.init_kind == "gaussian") {
      s.base = state_from_json(ic.at("base"), "initial.base.");
      s.rho_amplitude = ic.at("rho_amplitude").get<double>();
      s.center = ic.at("center").get<double>();
      s.width = ic.at("width").get<double>();
    } else {
      throw covhyp::InvalidParameter("initial.kind must be 'riemann' or 'gaussian', got '" +
                                     s.init_kind + "'");
    }
  }
}

int run_simulate(const SimSetup& s, const std::string& out_dir) {
  if (s.sf.system.empty())
    throw covhyp::InvalidParameter("simulate: no system given (config file or --system)");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw covhyp::InvalidParameter("simulate: cannot create output directory '" + out_dir +
                                   "': " + ec.message());
  }
  covhyp::SystemDescriptor d = covhyp::make_descriptor(s.sf.system, s.sf.params);

  covhyp::InitialCondition init;
  if (s.init_kind == "riemann") {
    init = covhyp::riemann_init(s.left, s.right, s.x_split);
  } else if (s.init_kind == "gaussian") {
    init = covhyp::gaussian_bump(s.base, s.rho_amplitude, s.center, s.width);
  } else {
    throw covhyp::InvalidParameter("simulate: initial data required (config file or --init)");
  }

  const covhyp::SimResult result = covhyp::run(d.system, s.grid, init, s.cfg);

  std::vector<std::string> files;
  for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
    files.emplace_back(name);
    covhyp::write_snapshot_csv(out_dir + "/" + name, d.system, s.grid,
                               result.snapshots[i].field, result.snapshots[i].t);
  }
  covhyp::write_series_csv(out_dir + "/series.csv", result.snapshots, files);
  covhyp::write_entropy_budget_csv(out_dir + "/entropy_budget.csv", result.records);

  const covhyp::StepRecord& first = result.records.front();
  const covhyp::StepRecord& last = result.records.back();
  double max_budget = 0.0;
  for (std::size_t i = 1; i < result.records.size(); ++i)
    max_budget = std::max(max_budget, result.records[i].budget);
  std::cout << "system=" << d.name << "\n";
  std::cout << "cells=" << s.grid.n_cells << "\n";
  std::cout << "steps=" << last.step << "\n";
  std::cout << "t_final=" << fmt17(last.t) << "\n";
  std::cout << "total_rho_drift="
            << fmt17((last.total_rho - first.total_rho) / std::max(1.0, std::abs(first.total_rho)))
            << "\n";
  std::cout << "total_J_drift="
            << fmt17((last.total_J - first.total_J) / std::max(1.0, std::abs(first.total_J)))
            << "\n";
  std::cout << "max_entropy_budget=" << fmt17(max_budget) << "\n";
  std::cout << "snapshots=" << result.snapshots.size() << "\n";
  if (!result.reached_t_end)
    std::cerr << "warning: max_steps reached at t=" << fmt17(last.t) << " before t_end\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covariant hyperbolic 2x2 systems: construction, verification, simulation"};
  app.require_subcommand(1);

  // inspect
  auto* inspect = app.add_subcommand("inspect", "evaluate one state or fiber point");
  SystemFlags insp_sf;
  add_system_flags(inspect, insp_sf, true);
  covhyp::State insp_w;
  covhyp::FiberPoint insp_fp;
  auto* o_rho = inspect->add_option("--rho", insp_w.rho, "state density");
  auto* o_J = inspect->add_option("--J", insp_w.J, "state momentum");
  auto* o_theta = inspect->add_option("--theta", insp_fp.theta, "fiber transport angle");
  auto* o_rho0 = inspect->add_option("--rho0", insp_fp.rho0, "fiber rest density");

  // verify
  auto* verify = app.add_subcommand("verify", "run the identity check suite");
  SystemFlags ver_sf;
  add_system_flags(verify, ver_sf, true);
  std::uint64_t seed = 42;
  long samples = 500;
  std::string out_prefix;
  double fault_scale = 1.0;
  verify->add_option("--seed", seed, "sampling seed (default 42)");
  verify->add_option("--samples", samples, "samples per check (default 500)");
  verify->add_option("--out", out_prefix, "write <prefix>.txt and <prefix>.json reports");
  verify->add_option("--fault-flux-scale", fault_scale,
                     "test fixture: scale the first flux component (default 1)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a finite-volume simulation");
  SimSetup sim;
  std::string config_path, out_dir = ".", boundary_name, init_kind_flag;
  std::vector<double> left_flag, right_flag, base_flag;
  simulate->add_option("--config", config_path, "JSON config file (schema in README)");
  add_system_flags(simulate, sim.sf, false);
  auto* o_xmin = simulate->add_option("--x-min", sim.grid.x_min, "left domain edge");
  auto* o_xmax = simulate->add_option("--x-max", sim.grid.x_max, "right domain edge");
  auto* o_ncells = simulate->add_option("--n-cells", sim.grid.n_cells, "cell count");
  auto* o_cfl = simulate->add_option("--cfl", sim.cfg.cfl, "CFL number in (0,1]");
  auto* o_tend = simulate->add_option("--t-end", sim.cfg.t_end, "final time (0: snapshot only)");
  auto* o_maxsteps = simulate->add_option("--max-steps", sim.cfg.max_steps, "step cap");
  auto* o_stride = simulate->add_option("--snapshot-stride", sim.cfg.snapshot_stride,
                                        "snapshot every k steps (0: first and last)");
  auto* o_boundary = simulate->add_option("--boundary", boundary_name, "outflow | periodic");
  auto* o_init = simulate->add_option("--init", init_kind_flag, "riemann | gaussian");
  auto* o_left = simulate->add_option("--left", left_flag, "riemann left state: RHO J")
                     ->expected(2);
  auto* o_right = simulate->add_option("--right", right_flag, "riemann right state: RHO J")
                      ->expected(2);
  auto* o_xsplit = simulate->add_option("--x-split", sim.x_split, "riemann jump position");
  auto* o_base = simulate->add_option("--base", base_flag, "gaussian base state: RHO J")
                     ->expected(2);
  auto* o_amp = simulate->add_option("--amplitude", sim.rho_amplitude, "gaussian rho amplitude");
  auto* o_center = simulate->add_option("--center", sim.center, "gaussian center");
  auto* o_width = simulate->add_option("--width", sim.width, "gaussian width");
  simulate->add_option("--out-dir", out_dir, "output directory (default .)");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "catalog queries");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "print the shipped system names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (inspect->parsed()) {
      const bool has_state = o_rho->count() > 0 && o_J->count() > 0;
      const bool has_fiber = o_theta->count() > 0 && o_rho0->count() > 0;
      if ((o_rho->count() > 0) != (o_J->count() > 0) ||
          (o_theta->count() > 0) != (o_rho0->count() > 0))
        throw covhyp::InvalidParameter("inspect: --rho/--J and --theta/--rho0 come in pairs");
      return run_inspect(insp_sf, has_state, insp_w, has_fiber, insp_fp);
    }
    if (verify->parsed()) return run_verify(ver_sf, seed, samples, out_prefix, fault_scale);
    if (simulate->parsed()) {
      // Config file first, then flags override whatever the user passed.
      SimSetup merged;
      if (!config_path.empty()) load_config(config_path, merged);
      if (simulate->count("--system") > 0) merged.sf.system = sim.sf.system;
      if (simulate->count("--rho-star") > 0) merged.sf.params.rho_star = sim.sf.params.rho_star;
      if (simulate->count("--sigma-bar") > 0) merged.sf.params.sigma_bar = sim.sf.params.sigma_bar;
      if (simulate->count("--a") > 0) merged.sf.params.a = sim.sf.params.a;
      if (simulate->count("--c") > 0) merged.sf.params.c = sim.sf.params.c;
      if (o_xmin->count() > 0) merged.grid.x_min = sim.grid.x_min;
      if (o_xmax->count() > 0) merged.grid.x_max = sim.grid.x_max;
      if (o_ncells->count() > 0) merged.grid.n_cells = sim.grid.n_cells;
      if (o_cfl->count() > 0) merged.cfg.cfl = sim.cfg.cfl;
      if (o_tend->count() > 0) merged.cfg.t_end = sim.cfg.t_end;
      if (o_maxsteps->count() > 0) merged.cfg.max_steps = sim.cfg.max_steps;
      if (o_stride->count() > 0) merged.cfg.snapshot_stride = sim.cfg.snapshot_stride;
      if (o_boundary->count() > 0) merged.cfg.boundary = boundary_from_name(boundary_name);
      if (o_init->count() > 0) merged.init_kind = init_kind_flag;
      if (o_left->count() > 0) merged.left = covhyp::State{left_flag[0], left_flag[1]};
      if (o_right->count() > 0) merged.right = covhyp::State{right_flag[0], right_flag[1]};
      if (o_xsplit->count() > 0) merged.x_split = sim.x_split;
      if (o_base->count() > 0) merged.base = covhyp::State{base_flag[0], base_flag[1]};
      if (o_amp->count() > 0) merged.rho_amplitude = sim.rho_amplitude;
      if (o_center->count() > 0) merged.center = sim.center;
      if (o_width->count() > 0) merged.width = sim.width;
      return run_simulate(merged, out_dir);
    }
    if (catalog->parsed()) {
      for (const std::string& name : covhyp::catalog_names()) std::cout << name << "\n";
      return 0;
    }
    return 2;
  } catch (const covhyp::StateLeftDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const covhyp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
