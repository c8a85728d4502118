#include "incentives/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "incentives/errors.hpp"
#include "incentives/scenario1.hpp"

namespace incentives {

Model parse_model(const std::string& name) {
  if (name == "linear") return Model::Linear;
  if (name == "admm") return Model::Admm;
  throw InputError("unknown model '" + name + "' (expected linear or admm)");
}

const char* to_string(Model model) { return model == Model::Linear ? "linear" : "admm"; }

std::vector<Index> canonical_offers(const IncentiveProblem& problem, std::vector<Index> offers) {
  for (std::size_t n = 0; n < offers.size(); ++n)
    if (problem.choice.incentive_of_column(offers[n]) == 0)
      offers[n] = no_offer_column(problem.routes, problem.choice, problem.demand.driver_to_od[n]);
  return offers;
}

ExperimentReport evaluate_offers(const IncentiveProblem& problem, const std::vector<Index>& offers,
                                 const ExperimentConfig& config, Index total_drivers) {
  if (static_cast<Index>(offers.size()) != problem.num_drivers())
    throw InputError("evaluate_offers: need one offer per decision driver");
  const std::vector<Index> canon = canonical_offers(problem, offers);
  const Matrix S = assignment_from_offers(problem.num_columns(), canon);

  ExperimentReport r;
  r.model = to_string(config.model);
  r.budget = config.budget;
  r.penetration = config.penetration;
  r.seed = config.seed;
  r.drivers = total_drivers;
  r.eligible = problem.num_drivers();
  r.incentive_amounts = problem.menu.amounts();
  r.incentive_counts.assign(r.incentive_amounts.size(), 0);
  r.incentive_counts[0] = total_drivers - r.eligible;
  double paid = 0.0;
  for (Index col : canon) {
    const Index i = problem.choice.incentive_of_column(col);
    ++r.incentive_counts[static_cast<std::size_t>(i)];
    r.cost_used += problem.cost(col);
    if (i != 0) {
      ++r.rewarded;
      paid += problem.menu.amount(i);
    }
  }
  r.rewarded_percent = total_drivers > 0 ? 100.0 * static_cast<double>(r.rewarded) / static_cast<double>(total_drivers) : 0.0;
  r.average_incentive = r.rewarded > 0 ? paid / static_cast<double>(r.rewarded) : 0.0;
  r.baseline_travel_time = total_travel_time(problem.volume_for_counts(problem.baseline_counts()), problem.net);
  r.achieved_travel_time = total_travel_time(problem.volume_for(S), problem.net);
  r.reduction_percent = r.baseline_travel_time > 0.0
                            ? 100.0 * (r.baseline_travel_time - r.achieved_travel_time) / r.baseline_travel_time
                            : 0.0;
  r.saved_value = value_of_saved_time(r.baseline_travel_time, r.achieved_travel_time, config.vot);
  r.alpha = config.alpha;
  return r;
}

ExperimentOutcome run_experiment(const IncentiveProblem& problem, const ExperimentConfig& config,
                                 Index total_drivers) {
  const auto start = std::chrono::steady_clock::now();
  if (!(config.budget >= 0.0)) throw InputError("experiment: budget must be >= 0");
  if (!(config.vot >= 0.0)) throw InputError("experiment: vot must be >= 0");

  ExperimentOutcome out;
  double alpha = config.alpha;
  bool retried = false;
  Index iterations = 0;
  bool converged = false;
  double relaxed = 0.0;

  if (problem.num_drivers() == 0) {
    // nothing to decide
  } else if (config.model == Model::Linear) {
    for (int attempt = 0;; ++attempt) {
      try {
        Scenario1Result res = solve_scenario1(problem, {config.budget, alpha}, config.mip);
        out.offers = res.offers;
        break;
      } catch (const InfeasibleError&) {
        if (!config.alpha_retry || attempt >= config.max_alpha_doublings) throw;
        alpha *= 2.0;
        retried = true;
      }
    }
  } else {
    const AdmmProblem admm(problem, config.budget);
    AdmmResult res = run_admm(admm, config.admm,
                              config.admm_start == ExperimentConfig::Start::Uniform ? problem.uniform_assignment()
                                                                                     : problem.baseline_assignment());
    RoundingResult rounded = round_assignment(res.u, problem, config.budget, config.mip);
    out.offers = rounded.offers;
    iterations = res.state.iteration;
    converged = res.converged;
    relaxed = res.relaxed_objective;
    out.admm_state = std::move(res.state);
  }

  out.report = evaluate_offers(problem, out.offers, config, total_drivers);
  out.report.alpha = alpha;
  out.report.alpha_retried = retried;
  out.report.admm_iterations = iterations;
  out.report.admm_converged = converged;
  out.report.relaxed_objective = relaxed;
  out.offers = canonical_offers(problem, out.offers);
  out.S = assignment_from_offers(problem.num_columns(), out.offers);
  out.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

ExperimentOutcome run_experiment(const Scenario& scenario, const ExperimentConfig& config) {
  const IncentiveProblem problem = build_problem(scenario, config.penetration, config.seed);
  return run_experiment(problem, config, scenario.total_drivers());
}

std::vector<ExperimentReport> run_sweep(const Scenario& scenario, const SweepConfig& config) {
  if (config.budgets.empty() || config.penetrations.empty()) throw InputError("sweep: empty budget or penetration list");
  struct Cell {
    double budget, penetration;
  };
  std::vector<Cell> cells;
  for (double b : config.budgets)
    for (double p : config.penetrations) cells.push_back({b, p});

  std::vector<ExperimentReport> reports(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) {
      try {
        ExperimentConfig cfg = config.base;
        cfg.budget = cells[k].budget;
        cfg.penetration = cells[k].penetration;
        reports[k] = run_experiment(scenario, cfg).report;
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return reports;
}

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string distribution(const ExperimentReport& r) {
  std::string s;
  for (std::size_t i = 0; i < r.incentive_amounts.size(); ++i) {
    if (i) s += ';';
    s += num(r.incentive_amounts[i]) + ":" + std::to_string(r.incentive_counts[i]);
  }
  return s;
}

}  // namespace

void write_report_csv(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << "model,budget,penetration,seed,cost_used,drivers,eligible,rewarded,rewarded_percent,"
         "average_incentive,baseline_tt_hours,achieved_tt_hours,reduction_percent,saved_value_dollars,"
         "incentive_distribution,alpha,alpha_retried,admm_iterations,admm_converged,relaxed_objective\n";
  for (const ExperimentReport& r : reports) {
    out << r.model << ',' << num(r.budget) << ',' << num(r.penetration) << ',' << r.seed << ','
        << num(r.cost_used) << ',' << r.drivers << ',' << r.eligible << ',' << r.rewarded << ','
        << num(r.rewarded_percent) << ',' << num(r.average_incentive) << ',' << num(r.baseline_travel_time)
        << ',' << num(r.achieved_travel_time) << ',' << num(r.reduction_percent) << ',' << num(r.saved_value)
        << ',' << distribution(r) << ',' << num(r.alpha) << ',' << (r.alpha_retried ? 1 : 0) << ','
        << r.admm_iterations << ',' << (r.admm_converged ? 1 : 0) << ',' << num(r.relaxed_objective) << '\n';
  }
}

void write_report_json(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ExperimentReport& r : reports) {
    nlohmann::json dist = nlohmann::json::array();
    for (std::size_t i = 0; i < r.incentive_amounts.size(); ++i)
      dist.push_back({{"amount", r.incentive_amounts[i]}, {"drivers", r.incentive_counts[i]}});
    arr.push_back({{"model", r.model},
                   {"budget", r.budget},
                   {"cost_used", r.cost_used},
                   {"drivers", r.drivers},
                   {"eligible", r.eligible},
                   {"rewarded", r.rewarded},
                   {"rewarded_percent", r.rewarded_percent},
                   {"average_incentive", r.average_incentive},
                   {"baseline_tt_hours", r.baseline_travel_time},
                   {"achieved_tt_hours", r.achieved_travel_time},
                   {"reduction_percent", r.reduction_percent},
                   {"saved_value_dollars", r.saved_value},
                   {"incentive_distribution", dist},
                   {"penetration", r.penetration},
                   {"seed", r.seed},
                   {"alpha", r.alpha},
                   {"alpha_retried", r.alpha_retried},
                   {"admm_iterations", r.admm_iterations},
                   {"admm_converged", r.admm_converged},
                   {"relaxed_objective", r.relaxed_objective},
                   {"wall_seconds", r.wall_seconds}});
  }
  out << arr.dump(2) << '\n';
}

std::vector<ExperimentReport> read_report_json(std::istream& in) {
  std::vector<ExperimentReport> reports;
  try {
    const nlohmann::json arr = nlohmann::json::parse(in);
    for (const auto& j : arr) {
      ExperimentReport r;
      r.model = j.at("model").get<std::string>();
      r.budget = j.at("budget").get<double>();
      r.cost_used = j.at("cost_used").get<double>();
      r.drivers = j.at("drivers").get<Index>();
      r.eligible = j.at("eligible").get<Index>();
      r.rewarded = j.at("rewarded").get<Index>();
      r.rewarded_percent = j.at("rewarded_percent").get<double>();
      r.average_incentive = j.at("average_incentive").get<double>();
      r.baseline_travel_time = j.at("baseline_tt_hours").get<double>();
      r.achieved_travel_time = j.at("achieved_tt_hours").get<double>();
      r.reduction_percent = j.at("reduction_percent").get<double>();
      r.saved_value = j.at("saved_value_dollars").get<double>();
      for (const auto& d : j.at("incentive_distribution")) {
        r.incentive_amounts.push_back(d.at("amount").get<double>());
        r.incentive_counts.push_back(d.at("drivers").get<Index>());
      }
      r.penetration = j.at("penetration").get<double>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.alpha = j.value("alpha", 1.0);
      r.alpha_retried = j.value("alpha_retried", false);
      r.admm_iterations = j.value("admm_iterations", Index{0});
      r.admm_converged = j.value("admm_converged", false);
      r.relaxed_objective = j.value("relaxed_objective", 0.0);
      r.wall_seconds = j.value("wall_seconds", 0.0);
      reports.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
  return reports;
}

void print_report_table(std::ostream& out, const std::vector<ExperimentReport>& reports) {
  out << std::left << std::setw(8) << "model" << std::right << std::setw(10) << "budget" << std::setw(8) << "pen"
      << std::setw(10) << "cost" << std::setw(10) << "reward%" << std::setw(10) << "avg$" << std::setw(12)
      << "base_h" << std::setw(12) << "achieved_h" << std::setw(10) << "reduct%" << std::setw(12) << "saved$"
      << "  distribution\n";
  out << std::fixed;
  for (const ExperimentReport& r : reports) {
    out << std::left << std::setw(8) << r.model << std::right << std::setprecision(2) << std::setw(10) << r.budget
        << std::setw(8) << r.penetration << std::setw(10) << r.cost_used << std::setw(10) << r.rewarded_percent
        << std::setw(10) << r.average_incentive << std::setprecision(4) << std::setw(12) << r.baseline_travel_time
        << std::setw(12) << r.achieved_travel_time << std::setprecision(2) << std::setw(10) << r.reduction_percent
        << std::setw(12) << r.saved_value << "  " << distribution(r);
    if (r.alpha_retried) out << "  (alpha raised to " << r.alpha << ")";
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
}

}  // namespace incentives
