/*
 * dispatch_oracle.hpp
 *
 * Direct evaluation of the window objective for a given power schedule,
 * written from the model equations without touching the LP builder, plus a
 * grid search over net power per step.
 */

#pragma once

#include "bess/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace bess::oracle {

struct WindowCase {
  Config cfg;
  std::vector<double> prices;
  PlantState state;
  double lambda_cyc = 1.0;
  double lambda_cal = 1.0;
  double c_ag = 0.0;
};

/// Objective value, or nullopt if the schedule leaves the energy bounds.
inline std::optional<double> window_objective(const WindowCase& w, std::span<const double> p_chg,
                                              std::span<const double> p_dis, double tol = 1e-12)
{
  const auto& b = w.cfg.battery;
  const auto& th = w.cfg.thermal;
  const auto& ag = w.cfg.aging;
  const double dt = w.cfg.horizon.dt_hours;
  const double cap = b.e_nom * w.state.soh;
  double e = w.state.e_batt, temp = w.state.temp, j = 0.0;
  for (std::size_t t = 0; t < w.prices.size(); ++t) {
    const double e_next = e + (p_chg[t] - p_dis[t]) * dt;
    if (e_next < -tol || e_next > cap + tol) return std::nullopt;
    const double temp_next =
        temp + th.k_t * (th.alpha_t * (th.t_amb - temp) + (th.beta_chg * p_chg[t] + th.beta_dis * p_dis[t]) / b.e_nom) * dt;
    double cal = -std::numeric_limits<double>::infinity();
    for (const auto& pl : ag.cal_planes)
      cal = std::max(cal, pl.a + pl.b * (e + e_next) / (2 * cap) + pl.c * (temp + temp_next) / 2);
    double cyc = -std::numeric_limits<double>::infinity();
    for (const auto& pl : ag.cyc_chg_planes)
      cyc = std::max(cyc, pl.a + pl.b * p_chg[t] / b.e_nom);
    const double fec = (p_chg[t] + p_dis[t]) * dt / (2 * b.e_nom);
    j += w.prices[t] * (p_chg[t] / b.eta_chg - p_dis[t] * b.eta_dis) * dt;
    j += w.c_ag * (w.lambda_cyc * (ag.k_cyc_dis * fec + cyc) + w.lambda_cal * cal);
    e = e_next;
    temp = temp_next;
  }
  return j;
}

struct GridResult {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> p_chg, p_dis;
};

/// Exhaustive search with `points` net-power levels per step spanning
/// [-P_dis_max, P_chg_max].
inline GridResult grid_search(const WindowCase& w, int points)
{
  const int n = static_cast<int>(w.prices.size());
  const double pc_max = w.cfg.battery.e_nom * w.cfg.battery.c_rate_max_chg;
  const double pd_max = w.cfg.battery.e_nom * w.cfg.battery.c_rate_max_dis;
  std::vector<int> idx(n, 0);
  std::vector<double> pc(n), pd(n);
  GridResult res;
  for (;;) {
    for (int t = 0; t < n; ++t) {
      const double net = -pd_max + (pc_max + pd_max) * idx[t] / (points - 1);
      pc[t] = std::max(net, 0.0);
      pd[t] = std::max(-net, 0.0);
    }
    if (auto j = window_objective(w, pc, pd); j && *j < res.best) {
      res.best = *j;
      res.p_chg = pc;
      res.p_dis = pd;
    }
    int t = 0;
    while (t < n && ++idx[t] == points)
      idx[t++] = 0;
    if (t == n) break;
  }
  return res;
}

/// Largest change of the objective when one step's net power moves by one
/// grid cell, summed over steps. Valid when the energy bounds cannot bind.
inline double grid_resolution_bound(const WindowCase& w, int points)
{
  const auto& b = w.cfg.battery;
  const auto& th = w.cfg.thermal;
  const auto& ag = w.cfg.aging;
  const double dt = w.cfg.horizon.dt_hours;
  const int n = static_cast<int>(w.prices.size());
  const double h = b.e_nom * (b.c_rate_max_chg + b.c_rate_max_dis) / (points - 1);
  const double cap = b.e_nom * w.state.soh;
  double max_b_cyc = 0.0, max_b_cal = 0.0, max_c_cal = 0.0;
  for (const auto& p : ag.cyc_chg_planes)
    max_b_cyc = std::max(max_b_cyc, std::abs(p.b));
  for (const auto& p : ag.cal_planes) {
    max_b_cal = std::max(max_b_cal, std::abs(p.b));
    max_c_cal = std::max(max_c_cal, std::abs(p.c));
  }
  const double eta = std::min(b.eta_chg, b.eta_dis);
  const double dtemp = th.k_t * std::max(th.beta_chg, th.beta_dis) * dt / b.e_nom;
  double bound = 0.0;
  for (int t = 0; t < n; ++t) {
    double l = w.prices[t] * dt / eta;
    l += w.c_ag * w.lambda_cyc * (ag.k_cyc_dis * dt / (2 * b.e_nom) + max_b_cyc / b.e_nom);
    // A power change at t shifts energy and temperature at every later step.
    l += w.c_ag * w.lambda_cal * (n - t) * (max_b_cal * dt / cap + max_c_cal * dtemp);
    bound += l * h;
  }
  return bound;
}

}  // namespace bess::oracle
