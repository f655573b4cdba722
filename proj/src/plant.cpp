/*
 * plant.cpp
 */

#include "bess/plant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bess {

namespace {

constexpr double kPlantTol = 1e-6;  // relative, on top of solver round-off

bool within(double v, double lo, double hi)
{
  const double slack = kPlantTol * std::max({1.0, std::abs(lo), std::abs(hi)});
  return v >= lo - slack && v <= hi + slack;
}

}  // namespace

StepResult step_plant(const PlantState& state, double p_chg, double p_dis, double price, double soh_ref,
                      const Config& cfg)
{
  const auto& bat = cfg.battery;
  const auto& th = cfg.thermal;
  const auto& ag = cfg.aging;
  const double dt = cfg.horizon.dt_hours;
  const double e_nom = bat.e_nom;
  const double cap = e_nom * soh_ref;

  if (!within(p_chg, 0.0, e_nom * bat.c_rate_max_chg))
    throw SimulationFault("charge power " + std::to_string(p_chg) + " kW outside its limit");
  if (!within(p_dis, 0.0, e_nom * bat.c_rate_max_dis))
    throw SimulationFault("discharge power " + std::to_string(p_dis) + " kW outside its limit");

  StepResult res;
  PlantState& next = res.state;
  next = state;
  next.e_batt = state.e_batt + (p_chg - p_dis) * dt;
  if (!within(next.e_batt, 0.0, cap))
    throw SimulationFault("stored energy " + std::to_string(next.e_batt) + " kWh outside [0, " +
                          std::to_string(cap) + "]");

  const double heat = (th.beta_chg * p_chg + th.beta_dis * p_dis) / e_nom;
  next.temp = state.temp + th.k_t * (th.alpha_t * (th.t_amb - state.temp) + heat) * dt;

  const double d_fec = (p_chg + p_dis) / (2.0 * e_nom) * dt;
  const double d_fec_aging = ag.discharge_throughput_only ? p_dis / (2.0 * e_nom) * dt : d_fec;
  const double soc_avg = (state.e_batt + next.e_batt) / (2.0 * cap);
  const double t_avg = (state.temp + next.temp) / 2.0;

  auto& out = res.outcome;
  out.q_cal = ag.calendar_fade(soc_avg, t_avg);
  out.q_cyc = ag.k_cyc_dis * d_fec_aging + ag.charge_cycle_fade(p_chg / e_nom);
  out.fec = d_fec;
  const double p_ac = p_chg / bat.eta_chg - p_dis * bat.eta_dis;
  out.revenue = -price * p_ac * dt;

  next.fec_total += d_fec;
  next.q_cal_total += out.q_cal;
  next.q_cyc_total += out.q_cyc;
  next.soh = state.soh - (out.q_cal + out.q_cyc);
  return res;
}

DayOutcome apply_day(const PlantState& state, std::span<const double> p_chg, std::span<const double> p_dis,
                     std::span<const double> prices, const Config& cfg, double soh_ref)
{
  const auto steps = static_cast<std::size_t>(cfg.horizon.steps_per_day());
  if (p_chg.size() != steps || p_dis.size() != steps || prices.size() != steps)
    throw std::invalid_argument("apply_day expects " + std::to_string(steps) + " steps");
  const double ref = soh_ref < 0.0 ? state.soh : soh_ref;

  DayOutcome day;
  PlantState s = state;
  for (std::size_t k = 0; k < steps; ++k) {
    StepResult r;
    try {
      r = step_plant(s, p_chg[k], p_dis[k], prices[k], ref, cfg);
    }
    catch (const SimulationFault& f) {
      throw SimulationFault("day " + std::to_string(state.day_index) + ", step " + std::to_string(k) + ": " +
                            f.what());
    }
    s = r.state;
    day.revenue += r.outcome.revenue;
    day.q_cal += r.outcome.q_cal;
    day.q_cyc += r.outcome.q_cyc;
    day.fec += r.outcome.fec;
  }
  s.day_index = state.day_index + 1;
  day.state_out = s;
  return day;
}

}  // namespace bess
