// incentives: route-incentive experiments from the command line.
//
//   incentives generate --preset appendix-c --out net.json
//   incentives solve --scenario net.json --model admm --budget 50 --out-dir run
//   incentives sweep --scenario net.json --budgets 0,50,100 --penetrations 0.5,1 --out-dir sweep
//   incentives oracle --scenario net.json --budget 10
//   incentives report --in run/report.json

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "incentives/errors.hpp"
#include "incentives/experiment.hpp"
#include "incentives/oracle.hpp"
#include "incentives/synthetic.hpp"

namespace fs = std::filesystem;
using namespace incentives;

namespace {

constexpr int kInfeasible = 2;
constexpr int kError = 1;

void add_solver_options(CLI::App* cmd, ExperimentConfig& cfg, std::string& model) {
  cmd->add_option("--model", model, "linear or admm")->check(CLI::IsMember({"linear", "admm"}));
  cmd->add_option("--alpha", cfg.alpha, "capacity multiplier for the linear model")->check(CLI::PositiveNumber);
  cmd->add_flag("!--no-alpha-retry", cfg.alpha_retry, "fail instead of doubling alpha when infeasible");
  cmd->add_option("--penetration", cfg.penetration, "share of first-interval drivers eligible for offers");
  cmd->add_option("--rho", cfg.admm.rho, "ADMM penalty");
  cmd->add_option("--lambda-reg", cfg.admm.lambda_reg, "binary-forcing weight on H");
  cmd->add_option("--max-iters", cfg.admm.max_iters, "ADMM iteration limit");
  cmd->add_option("--tol", cfg.admm.residual_tol, "ADMM residual tolerance");
  cmd->add_option("--seed", cfg.seed, "cohort and block-order seed");
  cmd->add_option("--vot", cfg.vot, "value of time, dollars per hour");
  cmd->add_option("--mip-gap", cfg.mip.rel_gap, "relative MIP gap");
}

void write_file(const fs::path& path, const std::string& what, auto&& writer) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + what + " to " + path.string());
  writer(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Route incentive optimization experiments"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic or preset scenario");
  std::string preset;
  SyntheticSpec spec;
  std::string gen_out;
  gen->add_option("--preset", preset, "named preset (appendix-c)");
  gen->add_option("--hubs", spec.hubs, "hub nodes in the chain");
  gen->add_option("--richness", spec.richness, "routes per multi-route OD pair");
  gen->add_option("--tightness", spec.tightness, "demand over direct-link capacity");
  gen->add_option("--demand", spec.demand, "first-interval drivers per OD pair");
  gen->add_option("--multi-route-fraction", spec.multi_route_fraction, "share of OD pairs with detours");
  gen->add_option("--incentives", spec.incentives, "incentive menu, starting at 0")->delimiter(',');
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "output file (stdout if omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "run one model on a scenario");
  ExperimentConfig cfg;
  std::string model = "admm";
  std::string scenario_path;
  std::string out_dir = ".";
  solve->add_option("--scenario", scenario_path, "scenario or network JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--budget", cfg.budget, "budget, dollars")->required();
  solve->add_option("--out-dir", out_dir, "directory for report.json, report.csv, residuals.csv");
  add_solver_options(solve, cfg, model);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a budget x penetration grid");
  SweepConfig sweep_cfg;
  std::string sweep_model = "admm";
  sweep->add_option("--scenario", scenario_path, "scenario or network JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--budgets", sweep_cfg.budgets, "comma-separated budgets")->delimiter(',');
  sweep->add_option("--penetrations", sweep_cfg.penetrations, "comma-separated penetration rates")->delimiter(',');
  sweep->add_option("--threads", sweep_cfg.threads, "worker threads (0: all cores)");
  sweep->add_option("--out-dir", out_dir, "directory for report.json and report.csv");
  add_solver_options(sweep, sweep_cfg.base, sweep_model);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive search on a small scenario");
  OracleConfig oracle_cfg;
  std::string objective = "congested";
  double oracle_pen = 1.0;
  std::uint64_t oracle_seed = 0;
  oracle->add_option("--scenario", scenario_path, "scenario or network JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--budget", oracle_cfg.budget, "budget, dollars")->required();
  oracle->add_option("--objective", objective, "congested or linear")->check(CLI::IsMember({"congested", "linear"}));
  oracle->add_option("--alpha", oracle_cfg.alpha, "capacity multiplier for the linear objective");
  oracle->add_option("--penetration", oracle_pen, "share of drivers eligible for offers");
  oracle->add_option("--seed", oracle_seed, "cohort seed");
  oracle->add_option("--max-assignments", oracle_cfg.max_assignments, "refuse larger searches");

  // report
  auto* report = app.add_subcommand("report", "print a report.json as a table");
  std::string report_in;
  report->add_option("--in", report_in, "report.json")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Scenario s = preset.empty() ? generate_synthetic(spec) : preset_scenario(preset);
      const std::string text = scenario_to_json(s);
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, "scenario", [&](std::ostream& o) { o << text; });
      }
    } else if (*solve) {
      cfg.model = parse_model(model);
      const Scenario s = load_scenario(scenario_path);
      const ExperimentOutcome res = run_experiment(s, cfg);
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "report.json", "report", [&](std::ostream& o) { write_report_json(o, {res.report}); });
      write_file(fs::path(out_dir) / "report.csv", "report", [&](std::ostream& o) { write_report_csv(o, {res.report}); });
      if (res.admm_state)
        write_file(fs::path(out_dir) / "residuals.csv", "residuals",
                   [&](std::ostream& o) { write_residual_csv(o, *res.admm_state); });
      print_report_table(std::cout, {res.report});
      if (res.report.alpha_retried)
        std::cerr << "note: linear model was infeasible at the requested alpha; solved with alpha = "
                  << res.report.alpha << "\n";
      if (res.admm_state && !res.report.admm_converged)
        std::cerr << "note: ADMM stopped at the iteration limit before reaching --tol\n";
    } else if (*sweep) {
      sweep_cfg.base.model = parse_model(sweep_model);
      const Scenario s = load_scenario(scenario_path);
      const std::vector<ExperimentReport> reports = run_sweep(s, sweep_cfg);
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "report.json", "report", [&](std::ostream& o) { write_report_json(o, reports); });
      write_file(fs::path(out_dir) / "report.csv", "report", [&](std::ostream& o) { write_report_csv(o, reports); });
      print_report_table(std::cout, reports);
    } else if (*oracle) {
      oracle_cfg.objective = objective == "linear" ? OracleObjective::Linear : OracleObjective::Congested;
      const Scenario s = load_scenario(scenario_path);
      const IncentiveProblem p = build_problem(s, oracle_pen, oracle_seed);
      const OracleResult r = brute_force_oracle(p, oracle_cfg);
      std::cout << "objective " << r.objective << "\nenumerated " << r.enumerated << "\nfeasible " << r.feasible
                << "\noffers";
      for (Index col : r.offers)
        std::cout << " r" << p.choice.route_of_column(col) << "/$" << p.menu.amount(p.choice.incentive_of_column(col));
      std::cout << '\n';
    } else if (*report) {
      std::ifstream in(report_in);
      print_report_table(std::cout, read_report_json(in));
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return 0;
}
