/*
 * dispatch.cpp
 *
 * Row layout per step t (rows_per_step = 2 + |cyc planes| + |cal planes|):
 *   energy:   e(t) - e(t-1) - dt p_chg(t) + dt p_dis(t)               = 0
 *   thermal:  T(t) - (1 - k a dt) T(t-1) - k dt (b+ p_chg + b- p_dis)/E = k a dt T_amb
 *   cyc(i):   u_cyc(t) - b_i p_chg(t) / (E s_cyc)                      >= a_i / s_cyc
 *   cal(i):   u_cal(t) - b_i SOC_avg(t) / s_cal - c_i T_avg(t) / s_cal   >= a_i / s_cal
 * where e(-1) = E_0 and T(-1) = T_0 move to the right-hand side at t = 0,
 * and u = fade / s keeps the epigraph rows O(1).
 */

#include "bess/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bess {

namespace {

double fade_scale(double magnitude)
{
  return magnitude > 1e-300 && std::isfinite(magnitude) ? magnitude : 1.0;
}

}  // namespace

WindowLp build_window_lp(const WindowProblem& wp, const Config& cfg)
{
  const auto& bat = cfg.battery;
  const auto& th = cfg.thermal;
  const auto& ag = cfg.aging;
  const double dt = cfg.horizon.dt_hours;
  const double e_nom = bat.e_nom;
  const double soh0 = wp.state_in.soh;
  const double e_cap = e_nom * soh0;
  const double e0 = wp.state_in.e_batt;
  const double t0 = wp.state_in.temp;
  const int n = wp.n_steps();

  if (n < 1) throw InfeasibleInputError("window has no steps");
  if (!(soh0 > 0.0)) throw InfeasibleInputError("state of health must be positive");
  const double tol = 1e-9 * std::max(1.0, e_cap);
  if (!(e0 >= -tol) || !(e0 <= e_cap + tol))
    throw InfeasibleInputError("initial stored energy " + std::to_string(e0) + " kWh outside [0, " +
                               std::to_string(e_cap) + "]");
  for (int t = 0; t < n; ++t)
    if (!(wp.prices[t] >= 0.0) || !std::isfinite(wp.prices[t]))
      throw InfeasibleInputError("price at step " + std::to_string(t) + " is negative or not finite");

  WindowLp out;
  auto& L = out.layout;
  L.n_steps = n;
  L.rows_per_step = 2 + static_cast<int>(ag.cyc_chg_planes.size() + ag.cal_planes.size());
  L.cyc_scale = fade_scale(std::abs(ag.charge_cycle_fade(bat.c_rate_max_chg)));
  L.cal_scale = fade_scale(std::abs(ag.calendar_fade(1.0, th.t_amb + 40.0)));

  auto& p = out.lp;
  p.lower.reserve(L.n_vars());
  p.entries.reserve(static_cast<std::size_t>(n) * (L.rows_per_step * 4));

  const double w_cyc = wp.c_ag * wp.lambda_cyc;
  const double w_cal = wp.c_ag * wp.lambda_cal;
  const double fec_per_kw = dt / (2.0 * e_nom);
  const double thr_chg = ag.discharge_throughput_only ? 0.0 : w_cyc * ag.k_cyc_dis * fec_per_kw;
  const double thr_dis = w_cyc * ag.k_cyc_dis * fec_per_kw;
  const double keep = 1.0 - th.k_t * th.alpha_t * dt;

  for (int t = 0; t < n; ++t) {
    const double price = wp.prices[t];
    p.add_variable(0.0, e_nom * bat.c_rate_max_chg, price * dt / bat.eta_chg + thr_chg);
    p.add_variable(0.0, e_nom * bat.c_rate_max_dis, -price * bat.eta_dis * dt + thr_dis);
    p.add_variable(0.0, e_cap, 0.0);
    p.add_variable(-lp::kInf, lp::kInf, 0.0);
    p.add_variable(-lp::kInf, lp::kInf, w_cyc * L.cyc_scale);
    p.add_variable(-lp::kInf, lp::kInf, w_cal * L.cal_scale);
  }

  for (int t = 0; t < n; ++t) {
    const int pc = L.index(t, VariableLayout::p_chg);
    const int pd = L.index(t, VariableLayout::p_dis);
    const int e = L.index(t, VariableLayout::e);
    const int T = L.index(t, VariableLayout::temp);
    const int e_prev = t > 0 ? L.index(t - 1, VariableLayout::e) : -1;
    const int T_prev = t > 0 ? L.index(t - 1, VariableLayout::temp) : -1;

    int r = p.add_row(lp::Relation::equal, t == 0 ? e0 : 0.0);
    p.add_entry(r, e, 1.0);
    if (e_prev >= 0) p.add_entry(r, e_prev, -1.0);
    p.add_entry(r, pc, -dt);
    p.add_entry(r, pd, dt);

    r = p.add_row(lp::Relation::equal, th.k_t * th.alpha_t * dt * th.t_amb + (t == 0 ? keep * t0 : 0.0));
    p.add_entry(r, T, 1.0);
    if (T_prev >= 0) p.add_entry(r, T_prev, -keep);
    if (th.k_t * th.beta_chg != 0.0) p.add_entry(r, pc, -th.k_t * dt * th.beta_chg / e_nom);
    if (th.k_t * th.beta_dis != 0.0) p.add_entry(r, pd, -th.k_t * dt * th.beta_dis / e_nom);

    const int u_cyc = L.index(t, VariableLayout::q_cyc_chg);
    for (const auto& plane : ag.cyc_chg_planes) {
      r = p.add_row(lp::Relation::greater_equal, plane.a / L.cyc_scale);
      p.add_entry(r, u_cyc, 1.0);
      if (plane.b != 0.0) p.add_entry(r, pc, -plane.b / (e_nom * L.cyc_scale));
    }

    const int u_cal = L.index(t, VariableLayout::q_cal);
    const double soc_w = 1.0 / (2.0 * e_cap);
    for (const auto& plane : ag.cal_planes) {
      const double kb = plane.b * soc_w / L.cal_scale;
      const double kc = plane.c * 0.5 / L.cal_scale;
      double rhs = plane.a / L.cal_scale;
      if (t == 0) rhs += kb * e0 + kc * t0;
      r = p.add_row(lp::Relation::greater_equal, rhs);
      p.add_entry(r, u_cal, 1.0);
      if (kb != 0.0) {
        p.add_entry(r, e, -kb);
        if (e_prev >= 0) p.add_entry(r, e_prev, -kb);
      }
      if (kc != 0.0) {
        p.add_entry(r, T, -kc);
        if (T_prev >= 0) p.add_entry(r, T_prev, -kc);
      }
    }
  }
  return out;
}

Schedule extract_schedule(const lp::LpSolution& sol, const VariableLayout& layout, double e_nom,
                          double eps_simul_factor)
{
  if (sol.status != lp::LpStatus::optimal)
    throw std::runtime_error("cannot extract a schedule from a " + lp::to_string(sol.status) + " solution");
  if (static_cast<int>(sol.x.size()) != layout.n_vars())
    throw std::runtime_error("solution does not match the variable layout");

  const int n = layout.n_steps;
  Schedule s;
  for (auto* v : {&s.p_chg, &s.p_dis, &s.e, &s.temp, &s.q_cal, &s.q_cyc_chg})
    v->resize(n);
  const double eps = eps_simul_factor * e_nom;
  for (int t = 0; t < n; ++t) {
    s.p_chg[t] = std::max(0.0, sol.x[layout.index(t, VariableLayout::p_chg)]);
    s.p_dis[t] = std::max(0.0, sol.x[layout.index(t, VariableLayout::p_dis)]);
    s.e[t] = sol.x[layout.index(t, VariableLayout::e)];
    s.temp[t] = sol.x[layout.index(t, VariableLayout::temp)];
    s.q_cyc_chg[t] = sol.x[layout.index(t, VariableLayout::q_cyc_chg)] * layout.cyc_scale;
    s.q_cal[t] = sol.x[layout.index(t, VariableLayout::q_cal)] * layout.cal_scale;
    if (s.p_chg[t] * s.p_dis[t] > eps) s.simultaneous_steps.push_back(t);
  }
  return s;
}

double FadeBreakdown::total() const
{
  double sum = 0.0;
  for (std::size_t t = 0; t < q_cal.size(); ++t)
    sum += q_cal[t] + q_cyc[t];
  return sum;
}

namespace {

/// Completes a point from fixed powers using only the LP rows.
std::vector<double> complete_point(const WindowLp& w, std::span<const double> p_chg, std::span<const double> p_dis)
{
  const auto& p = w.lp;
  const auto& L = w.layout;
  std::vector<double> x(p.n_vars(), 0.0);
  std::vector<char> known(p.n_vars(), 0);
  for (int t = 0; t < L.n_steps; ++t) {
    x[L.index(t, VariableLayout::p_chg)] = p_chg[t];
    x[L.index(t, VariableLayout::p_dis)] = p_dis[t];
    known[L.index(t, VariableLayout::p_chg)] = 1;
    known[L.index(t, VariableLayout::p_dis)] = 1;
  }

  std::vector<std::vector<lp::Triplet>> rows(p.n_rows());
  for (const auto& e : p.entries)
    rows[e.row].push_back(e);

  auto settle = [&](int r, bool equality) {
    double rest = p.rhs[r];
    int unknown = -1;
    double coeff = 0.0;
    for (const auto& e : rows[r]) {
      if (known[e.col]) {
        rest -= e.coeff * x[e.col];
      }
      else {
        if (unknown >= 0 && unknown != e.col)
          throw std::logic_error("row " + std::to_string(r) + " has more than one unresolved variable");
        unknown = e.col;
        coeff += e.coeff;
      }
    }
    if (unknown < 0) return -1;
    const double v = rest / coeff;
    if (equality) x[unknown] = v;
    else x[unknown] = std::max(x[unknown], v);
    return unknown;
  };

  // Equality rows resolve energy and temperature step by step.
  for (int r = 0; r < p.n_rows(); ++r) {
    if (p.relation[r] != lp::Relation::equal) continue;
    const int j = settle(r, true);
    if (j >= 0) known[j] = 1;
  }
  // Epigraph variables take the largest plane value.
  for (int j = 0; j < p.n_vars(); ++j)
    if (!known[j]) x[j] = -lp::kInf;
  for (int r = 0; r < p.n_rows(); ++r)
    if (p.relation[r] == lp::Relation::greater_equal) settle(r, false);
  return x;
}

std::vector<double> per_step_objective(const WindowLp& w, const std::vector<double>& x)
{
  const auto& L = w.layout;
  std::vector<double> out(L.n_steps, 0.0);
  for (int t = 0; t < L.n_steps; ++t)
    for (int s = 0; s < VariableLayout::slots; ++s) {
      const int j = L.index(t, static_cast<VariableLayout::Slot>(s));
      if (w.lp.objective[j] != 0.0) out[t] += w.lp.objective[j] * x[j];
    }
  return out;
}

}  // namespace

FadeBreakdown formulation_fade(const Config& cfg, const PlantState& state_in, std::span<const double> p_chg,
                               std::span<const double> p_dis)
{
  if (p_chg.size() != p_dis.size()) throw std::invalid_argument("power schedules differ in length");
  WindowProblem wp;
  wp.prices.assign(p_chg.size(), 0.0);
  wp.state_in = state_in;
  wp.c_ag = 1.0;

  FadeBreakdown out;
  wp.lambda_cal = 1.0;
  wp.lambda_cyc = 0.0;
  const auto cal = build_window_lp(wp, cfg);
  out.q_cal = per_step_objective(cal, complete_point(cal, p_chg, p_dis));

  wp.lambda_cal = 0.0;
  wp.lambda_cyc = 1.0;
  const auto cyc = build_window_lp(wp, cfg);
  out.q_cyc = per_step_objective(cyc, complete_point(cyc, p_chg, p_dis));
  return out;
}

lp::Basis shift_basis(const lp::Basis& basis, const VariableLayout& layout, int shift_steps)
{
  const int n = layout.n_steps;
  const int vars = layout.n_vars();
  const int rps = layout.rows_per_step;
  const int m = n * rps;
  if (static_cast<int>(basis.status.size()) != vars + m || shift_steps <= 0 || shift_steps >= n) return {};

  lp::Basis out;
  out.status.resize(basis.status.size());
  for (int t = 0; t < n; ++t) {
    const int src = t + shift_steps < n ? t + shift_steps : t;
    for (int s = 0; s < VariableLayout::slots; ++s)
      out.status[t * VariableLayout::slots + s] = basis.status[src * VariableLayout::slots + s];
    for (int k = 0; k < rps; ++k)
      out.status[vars + t * rps + k] = basis.status[vars + src * rps + k];
  }

  int count = static_cast<int>(std::count(out.status.begin(), out.status.end(), lp::VarStatus::basic));
  // Repair from the end of the window, where the copied statuses are least meaningful.
  for (int t = n - 1; t >= 0 && count > m; --t)
    for (int k = rps - 1; k >= 0 && count > m; --k) {
      auto& st = out.status[vars + t * rps + k];
      if (st == lp::VarStatus::basic) {
        st = lp::VarStatus::at_lower;
        --count;
      }
    }
  for (int t = n - 1; t >= 0 && count < m; --t)
    for (int k = 0; k < rps && count < m; ++k) {
      auto& st = out.status[vars + t * rps + k];
      if (st != lp::VarStatus::basic) {
        st = lp::VarStatus::basic;
        ++count;
      }
    }
  return out;
}

}  // namespace bess
