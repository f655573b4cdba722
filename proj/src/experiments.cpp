/*
 * experiments.cpp
 */

#include "bess/experiments.hpp"

#include "bess/economics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bess {

const char* to_string(SweepMode mode)
{
  switch (mode) {
  case SweepMode::cal_only: return "cal-only";
  case SweepMode::cyc_only: return "cyc-only";
  case SweepMode::both: return "both";
  case SweepMode::grid2d: return "grid2d";
  }
  return "?";
}

SweepMode parse_sweep_mode(const std::string& text)
{
  for (auto m : {SweepMode::cal_only, SweepMode::cyc_only, SweepMode::both, SweepMode::grid2d})
    if (text == to_string(m)) return m;
  throw std::invalid_argument("unknown sweep mode '" + text + "'");
}

std::vector<double> default_lambda_grid()
{
  std::vector<double> g;
  for (int k = -2; k <= 6; ++k)
    g.push_back(std::ldexp(1.0, k));
  return g;
}

namespace {

struct GridPoint {
  double cal, cyc;
};

std::vector<GridPoint> grid_points(const SweepSpec& spec, const Config& cfg)
{
  std::vector<GridPoint> pts;
  const auto& lv = spec.lambda_values;
  switch (spec.mode) {
  case SweepMode::cal_only:
    for (double l : lv)
      pts.push_back({l, cfg.economic.lambda_cyc});
    break;
  case SweepMode::cyc_only:
    for (double l : lv)
      pts.push_back({cfg.economic.lambda_cal, l});
    break;
  case SweepMode::both:
    for (double l : lv)
      pts.push_back({l, l});
    break;
  case SweepMode::grid2d:
    for (double cal : lv)
      for (double cyc : lv)
        pts.push_back({cal, cyc});
    break;
  }
  return pts;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Config& cfg, std::span<const double> prices,
                                const RunOptions& opts)
{
  if (spec.lambda_values.empty()) throw std::invalid_argument("sweep needs at least one lambda value");
  for (std::size_t k = 0; k < spec.lambda_values.size(); ++k)
    if (!(spec.lambda_values[k] > 0.0) || (k > 0 && spec.lambda_values[k] <= spec.lambda_values[k - 1]))
      throw std::invalid_argument("lambda values must be positive and ascending");
  if (spec.interest_rates.empty()) throw std::invalid_argument("sweep needs at least one interest rate");
  for (double i : spec.interest_rates)
    if (!(i >= 0.0) || !std::isfinite(i)) throw std::invalid_argument("interest rates must be >= 0");

  const auto pts = grid_points(spec, cfg);
  const std::size_t n_rates = spec.interest_rates.size();
  std::vector<SweepRow> rows(pts.size() * n_rates);

  auto run_point = [&](std::size_t p) {
    const auto [cal, cyc] = pts[p];
    for (std::size_t r = 0; r < n_rates; ++r) {
      auto& row = rows[p * n_rates + r];
      row.lambda_cal = cal;
      row.lambda_cyc = cyc;
      row.interest_rate = spec.interest_rates[r];
    }
    try {
      const auto life = run_life(cfg, prices, StaticLambda{cyc, cal}, opts);
      const auto& fs = life.final_state;
      const double fade = fs.q_cal_total + fs.q_cyc_total;
      for (std::size_t r = 0; r < n_rates; ++r) {
        auto& row = rows[p * n_rates + r];
        row.npv = npv(life.yearly_revenues, row.interest_rate);
        row.pi = cfg.battery.c_battery > 0.0 ? profitability_index(row.npv, cfg.battery.c_battery) : 0.0;
        row.t_eol_years = life.t_eol_years;
        row.total_fec = life.total_fec();
        row.q_cal_share = fade > 0.0 ? fs.q_cal_total / fade : 0.0;
      }
    }
    catch (const std::exception& e) {
      for (std::size_t r = 0; r < n_rates; ++r)
        rows[p * n_rates + r].error = e.what();
    }
  };

  const int threads = std::clamp(spec.threads, 1, static_cast<int>(pts.size()));
  if (threads == 1) {
    for (std::size_t p = 0; p < pts.size(); ++p)
      run_point(p);
  }
  else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t p; (p = next.fetch_add(1)) < pts.size();)
          run_point(p);
      });
  }
  return rows;
}

SweepRow find_peak(std::span<const SweepRow> rows)
{
  const SweepRow* best = nullptr;
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    if (!best || r.npv > best->npv ||
        (r.npv == best->npv && r.lambda_cal + r.lambda_cyc < best->lambda_cal + best->lambda_cyc))
      best = &r;
  }
  if (!best) throw std::invalid_argument("no successful sweep rows");
  return *best;
}

SweepRow find_peak(std::span<const SweepRow> rows, double interest_rate)
{
  std::vector<SweepRow> sel;
  for (const auto& r : rows)
    if (r.interest_rate == interest_rate) sel.push_back(r);
  return find_peak(sel);
}

double row_lambda(const SweepRow& row, SweepMode mode)
{
  return mode == SweepMode::cal_only ? row.lambda_cal : row.lambda_cyc;
}

AgingShares aging_portions(const LifeResult& result)
{
  const double cal = result.final_state.q_cal_total;
  const double cyc = result.final_state.q_cyc_total;
  if (!(cal + cyc > 0.0)) throw std::invalid_argument("no fade accrued");
  AgingShares s;
  s.calendar = cal / (cal + cyc);
  s.cycle = 1.0 - s.calendar;
  return s;
}

WeeklyScatter weekly_lambda_scatter(const LifeResult& result, double c_ag)
{
  if (!(c_ag > 0.0)) throw std::invalid_argument("c_ag must be positive");
  WeeklyScatter out;
  const auto& d = result.daily;
  for (std::size_t w = 0; (w + 1) * 7 <= d.size(); ++w) {
    double rev = 0.0, fade = 0.0;
    for (std::size_t k = w * 7; k < (w + 1) * 7; ++k) {
      rev += d[k].revenue;
      fade += d[k].q_cal + d[k].q_cyc;
    }
    if (fade <= kFadeEpsilon) continue;
    out.weeks.push_back({static_cast<int>(w), rev / fade / c_ag});
  }
  for (const auto& e : out.weeks)
    out.mean += e.lambda;
  if (!out.weeks.empty()) out.mean /= static_cast<double>(out.weeks.size());
  return out;
}

}  // namespace bess
