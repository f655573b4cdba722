/*
 * experiments.hpp
 *
 * Lambda sweeps over whole lives, peak picking, aging shares and the weekly
 * revenue-per-fade estimates.
 */

#pragma once

#include "bess/domain.hpp"
#include "bess/life.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bess {

enum class SweepMode { cal_only, cyc_only, both, grid2d };

const char* to_string(SweepMode mode);
SweepMode parse_sweep_mode(const std::string& text);  // throws std::invalid_argument

/// 2^-2 .. 2^6
std::vector<double> default_lambda_grid();

struct SweepSpec {
  SweepMode mode = SweepMode::both;
  std::vector<double> lambda_values = default_lambda_grid();
  std::vector<double> interest_rates{0.0};
  int threads = 1;
};

/// In cal-only / cyc-only mode the other weight stays at its config value.
struct SweepRow {
  double lambda_cal = 0.0;
  double lambda_cyc = 0.0;
  double interest_rate = 0.0;
  double npv = 0.0;
  double pi = 0.0;
  double t_eol_years = 0.0;
  double total_fec = 0.0;
  double q_cal_share = 0.0;
  std::string error;  //!< non-empty when the run failed

  bool ok() const { return error.empty(); }
};

/// Rows ordered by grid point, then by interest rate. A life is simulated
/// once per grid point since dispatch does not depend on the rate.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Config& cfg, std::span<const double> prices,
                                const RunOptions& opts = {});

/// Arg-max NPV over successful rows; ties go to the smaller lambda
/// (lambda_cal + lambda_cyc). Throws std::invalid_argument when none qualify.
SweepRow find_peak(std::span<const SweepRow> rows);
SweepRow find_peak(std::span<const SweepRow> rows, double interest_rate);

/// Grid point lambda used for peak reporting (lambda_cal in cal-only mode,
/// lambda_cyc otherwise).
double row_lambda(const SweepRow& row, SweepMode mode);

struct AgingShares {
  double calendar = 0.0;
  double cycle = 0.0;
};

/// Throws std::invalid_argument when the life accrued no fade.
AgingShares aging_portions(const LifeResult& result);

struct WeeklyEstimate {
  int week = 0;
  double lambda = 0.0;
};

struct WeeklyScatter {
  std::vector<WeeklyEstimate> weeks;
  double mean = 0.0;
};

/// (weekly revenue / weekly fade) / c_ag over complete 7-day blocks; weeks
/// without fade are skipped.
WeeklyScatter weekly_lambda_scatter(const LifeResult& result, double c_ag);

}  // namespace bess
