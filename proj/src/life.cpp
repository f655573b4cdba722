/*
 * life.cpp
 */

#include "bess/life.hpp"

#include "bess/dispatch.hpp"
#include "bess/economics.hpp"
#include "bess/plant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bess {

double LifeResult::total_revenue() const
{
  return std::accumulate(yearly_revenues.begin(), yearly_revenues.end(), 0.0);
}

WindowAnchor update_quasi_steady_state(const PlantState& state, const Config& cfg)
{
  WindowAnchor a;
  a.soh0 = state.soh;
  a.e0 = std::clamp(state.e_batt, 0.0, cfg.battery.e_nom * state.soh);
  a.t0 = state.temp;
  return a;
}

LifeResult run_life(const Config& cfg, std::span<const double> prices, const LambdaPolicy& policy,
                    const RunOptions& opts)
{
  const int spd = cfg.horizon.steps_per_day();
  const int window_steps = cfg.horizon.window_steps();
  const int commit = cfg.horizon.commit_days;
  if (prices.empty() || prices.size() % spd != 0)
    throw LifeError("price series must contain whole days of " + std::to_string(spd) + " steps");
  if (static_cast<int>(prices.size()) < window_steps)
    throw LifeError("price series is shorter than the optimisation window");
  const int series_days = static_cast<int>(prices.size()) / spd;

  const double c_ag = compute_c_ag(cfg.battery.c_battery, cfg.battery.q_eol);
  const double soh_eol = soh_at_eol(cfg.battery);

  AdaptiveLambdaState estimator;
  const bool adaptive = std::holds_alternative<AdaptiveLambda>(policy);
  if (adaptive) {
    if (!(c_ag > 0.0)) throw LifeError("adaptive lambda needs a positive battery cost");
    estimator.window_days = std::get<AdaptiveLambda>(policy).window_days;
  }

  LifeResult res;
  PlantState state = opts.initial.value_or(initial_state(cfg));
  lp::SimplexSolver solver(opts.solver);
  lp::Basis basis;

  WindowProblem wp;
  wp.c_ag = c_ag;
  wp.prices.resize(window_steps);

  int window = 0;
  while (state.soh > soh_eol) {
    if (state.day_index >= opts.max_days)
      throw LifeError("end of life not reached within " + std::to_string(opts.max_days) + " days");

    const auto anchor = update_quasi_steady_state(state, cfg);
    wp.state_in = state;
    wp.state_in.e_batt = anchor.e0;
    wp.state_in.soh = anchor.soh0;
    wp.state_in.temp = anchor.t0;
    if (adaptive) {
      wp.lambda_cyc = wp.lambda_cal = estimator.current_lambda;
    }
    else {
      const auto& s = std::get<StaticLambda>(policy);
      wp.lambda_cyc = s.cyc;
      wp.lambda_cal = s.cal;
    }
    const long long first = static_cast<long long>(state.day_index % series_days) * spd;
    for (int k = 0; k < window_steps; ++k)
      wp.prices[k] = prices[(first + k) % prices.size()];

    const auto w = build_window_lp(wp, cfg);
    const auto sol = solver.solve(w.lp, opts.warm_start && !basis.empty() ? &basis : nullptr);
    res.lp_iterations += sol.iterations;
    if (sol.status != lp::LpStatus::optimal)
      throw LifeError("window " + std::to_string(window) + " (day " + std::to_string(state.day_index) +
                      "): solver returned " + lp::to_string(sol.status));
    const auto sched = extract_schedule(sol, w.layout, cfg.battery.e_nom);
    if (opts.warm_start) basis = shift_basis(sol.basis, w.layout, spd * commit);

    const double soh_ref = anchor.soh0;
    state.e_batt = anchor.e0;
    for (int d = 0; d < commit && state.soh > soh_eol; ++d) {
      const auto off = static_cast<std::size_t>(d) * spd;
      for (int t : sched.simultaneous_steps)
        if (t >= static_cast<int>(off) && t < static_cast<int>(off) + spd) ++res.simultaneity_warnings;
      const auto day = apply_day(state, std::span(sched.p_chg).subspan(off, spd),
                                 std::span(sched.p_dis).subspan(off, spd),
                                 std::span<const double>(wp.prices).subspan(off, spd), cfg, soh_ref);

      DailyRecord rec;
      rec.day = state.day_index;
      rec.revenue = day.revenue;
      rec.q_cal = day.q_cal;
      rec.q_cyc = day.q_cyc;
      rec.soh = day.state_out.soh;
      rec.fec = day.fec;
      rec.lambda_cyc = wp.lambda_cyc;
      rec.lambda_cal = wp.lambda_cal;
      res.daily.push_back(rec);

      const auto year = static_cast<std::size_t>(state.day_index / 365);
      if (res.yearly_revenues.size() <= year) res.yearly_revenues.resize(year + 1, 0.0);
      res.yearly_revenues[year] += day.revenue;

      state = day.state_out;
      if (adaptive) {
        estimator = adaptive_update(std::move(estimator), day.revenue, day.q_cal + day.q_cyc, c_ag);
        if (!std::isfinite(estimator.current_lambda))
          throw LifeError("adaptive lambda became non-finite on day " + std::to_string(rec.day));
      }
    }
    ++window;
  }

  res.final_state = state;
  res.t_eol_years = state.day_index / 365.25;
  return res;
}

}  // namespace bess
