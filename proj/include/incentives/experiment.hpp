#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "incentives/admm.hpp"
#include "incentives/lp.hpp"
#include "incentives/scenario.hpp"

namespace incentives {

enum class Model { Linear, Admm };

Model parse_model(const std::string& name);
const char* to_string(Model model);

struct ExperimentConfig {
  Model model = Model::Admm;
  double budget = 0.0;
  double alpha = 1.0;          // linear model only
  bool alpha_retry = true;     // double α on infeasibility, up to max_alpha_doublings times
  int max_alpha_doublings = 10;
  double penetration = 1.0;
  std::uint64_t seed = 0;
  double vot = 157.8;          // dollars per hour
  AdmmConfig admm;
  /// Relaxed start for ADMM: every driver spread over its OD's offers, or
  /// every driver on the no-offer column.
  enum class Start { Uniform, Baseline } admm_start = Start::Baseline;
  MipOptions mip;
};

struct ExperimentReport {
  std::string model;
  double budget = 0.0;
  double cost_used = 0.0;
  Index drivers = 0;           // first-interval drivers, eligible or not
  Index eligible = 0;
  Index rewarded = 0;
  double rewarded_percent = 0.0;
  double average_incentive = 0.0;  // among rewarded drivers
  double baseline_travel_time = 0.0;  // hours
  double achieved_travel_time = 0.0;  // hours
  double reduction_percent = 0.0;
  double saved_value = 0.0;            // dollars
  std::vector<double> incentive_amounts;
  std::vector<Index> incentive_counts;  // drivers per amount, all first-interval drivers
  double penetration = 1.0;
  std::uint64_t seed = 0;
  double alpha = 1.0;           // α actually used (linear)
  bool alpha_retried = false;
  Index admm_iterations = 0;
  bool admm_converged = false;
  double relaxed_objective = 0.0;
  double wall_seconds = 0.0;
};

struct ExperimentOutcome {
  ExperimentReport report;
  Matrix S;                    // decision-driver assignment
  std::vector<Index> offers;
  std::optional<AdmmState> admm_state;
};

/// Replaces every $0 offer with the OD's no-offer column. All $0 columns
/// of an OD have the same route distribution, so volumes do not change.
std::vector<Index> canonical_offers(const IncentiveProblem& problem, std::vector<Index> offers);

/// Fills the report metrics for a decision-driver offer vector; travel
/// times use the original link parameters.
ExperimentReport evaluate_offers(const IncentiveProblem& problem, const std::vector<Index>& offers,
                                 const ExperimentConfig& config, Index total_drivers);

ExperimentOutcome run_experiment(const Scenario& scenario, const ExperimentConfig& config);
ExperimentOutcome run_experiment(const IncentiveProblem& problem, const ExperimentConfig& config,
                                 Index total_drivers);

struct SweepConfig {
  ExperimentConfig base;
  std::vector<double> budgets{0.0};
  std::vector<double> penetrations{1.0};
  unsigned threads = 0;  // 0: hardware concurrency
};

/// One report per (budget, penetration) cell, budget-major, regardless of
/// thread count.
std::vector<ExperimentReport> run_sweep(const Scenario& scenario, const SweepConfig& config);

void write_report_csv(std::ostream& out, const std::vector<ExperimentReport>& reports);
void write_report_json(std::ostream& out, const std::vector<ExperimentReport>& reports);
std::vector<ExperimentReport> read_report_json(std::istream& in);
/// Fixed-width table for terminals.
void print_report_table(std::ostream& out, const std::vector<ExperimentReport>& reports);

}  // namespace incentives
