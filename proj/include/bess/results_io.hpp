/*
 * results_io.hpp
 *
 * Text forms of simulation output: the daily log CSV, the life summary JSON,
 * the sweep table and its peak.
 */

#pragma once

#include "bess/domain.hpp"
#include "bess/experiments.hpp"
#include "bess/life.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bess {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

/// Columns: day,revenue_eur,q_cal,q_cyc,soh,fec,lambda_used. lambda_used is a
/// single number when both weights agree and "cal:cyc" otherwise.
std::string format_daily_log(std::span<const DailyRecord> daily);
/// Inverse of format_daily_log. Throws std::runtime_error on malformed input.
std::vector<DailyRecord> parse_daily_log(std::string_view csv);

/// Revenue summed over 365-day blocks of the day index.
std::vector<double> yearly_revenues(std::span<const DailyRecord> daily);

struct LifeSummary {
  double t_eol_years = 0.0;
  double npv_eur = 0.0;
  double pi = 0.0;
  double total_fec = 0.0;
  double q_cal_share = 0.0;
};

LifeSummary summarize(const LifeResult& result, const Config& cfg);
/// From a daily log alone; t_eol is the day count over 365.25.
LifeSummary summarize(std::span<const DailyRecord> daily, double c_battery, double interest_rate);
std::string format_summary(const LifeSummary& s);

std::string format_sweep(std::span<const SweepRow> rows);
std::string format_peak(const SweepRow& peak, SweepMode mode);

}  // namespace bess
