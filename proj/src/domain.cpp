/*
 * domain.cpp
 *
 * Validation of the configuration types. The aging-plane sign checks solve a
 * tiny LP (minimise the plane maximum over the admissible input box), since a
 * convex PWA function can reach its minimum inside the box, not only at corners.
 */

#include "bess/domain.hpp"

#include "bess/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bess {

double AgingModel::charge_cycle_fade(double c_rate) const
{
  double q = -lp::kInf;
  for (const auto& p : cyc_chg_planes)
    q = std::max(q, p.a + p.b * c_rate);
  return q;
}

double AgingModel::calendar_fade(double soc_avg, double t_avg) const
{
  double q = -lp::kInf;
  for (const auto& p : cal_planes)
    q = std::max(q, p.a + p.b * soc_avg + p.c * t_avg);
  return q;
}

int HorizonConfig::steps_per_day() const
{
  return static_cast<int>(std::lround(24.0 / dt_hours));
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations)
          msg += "\n  - " + v;
        return msg;
      }()),
      violations_(std::move(violations))
{
}

double calendar_floor(const AgingModel& aging, const ThermalConfig& thermal)
{
  lp::SparseLp p;
  const int z = p.add_variable(-lp::kInf, lp::kInf, 1.0);
  const int soc = p.add_variable(0.0, 1.0, 0.0);
  const int temp = p.add_variable(thermal.t_amb - 20.0, thermal.t_amb + 40.0, 0.0);
  for (const auto& plane : aging.cal_planes) {
    const int r = p.add_row(lp::Relation::greater_equal, plane.a);
    p.add_entry(r, z, 1.0);
    p.add_entry(r, soc, -plane.b);
    p.add_entry(r, temp, -plane.c);
  }
  const auto sol = lp::solve_lp(p);
  return sol.status == lp::LpStatus::optimal ? sol.objective_value : -lp::kInf;
}

double charge_cycle_floor(const AgingModel& aging, const BatteryConfig& battery)
{
  lp::SparseLp p;
  const int z = p.add_variable(-lp::kInf, lp::kInf, 1.0);
  const int rate = p.add_variable(0.0, battery.c_rate_max_chg, 0.0);
  for (const auto& plane : aging.cyc_chg_planes) {
    const int r = p.add_row(lp::Relation::greater_equal, plane.a);
    p.add_entry(r, z, 1.0);
    p.add_entry(r, rate, -plane.b);
  }
  const auto sol = lp::solve_lp(p);
  return sol.status == lp::LpStatus::optimal ? sol.objective_value : -lp::kInf;
}

namespace {

bool finite_all(std::initializer_list<double> values)
{
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<std::string> config_violations(const Config& cfg)
{
  std::vector<std::string> out;
  const auto& b = cfg.battery;
  const auto& th = cfg.thermal;
  const auto& ag = cfg.aging;
  const auto& ec = cfg.economic;
  const auto& hz = cfg.horizon;

  if (!finite_all({b.e_nom, b.c_rate_max_chg, b.c_rate_max_dis, b.eta_chg, b.eta_dis, b.c_battery,
                   b.q_eol, b.soh_initial, b.initial_soc}))
    out.push_back("battery: non-finite value");
  if (!(b.e_nom > 0.0)) out.push_back("battery.e_nom must be > 0");
  if (!(b.c_rate_max_chg > 0.0) || !(b.c_rate_max_dis > 0.0))
    out.push_back("battery: C-rate limits must be > 0");
  if (!(b.eta_chg > 0.0 && b.eta_chg <= 1.0)) out.push_back("battery.eta_chg: efficiency out of (0,1]");
  if (!(b.eta_dis > 0.0 && b.eta_dis <= 1.0)) out.push_back("battery.eta_dis: efficiency out of (0,1]");
  if (!(b.q_eol > 0.0 && b.q_eol < 1.0)) out.push_back("battery.q_eol must lie in (0,1)");
  if (!(b.c_battery >= 0.0)) out.push_back("battery.c_battery must be >= 0");
  if (!(b.soh_initial > 0.0 && b.soh_initial <= 1.0)) out.push_back("battery.soh_initial must lie in (0,1]");
  if (!(b.initial_soc >= 0.0 && b.initial_soc <= 1.0)) out.push_back("battery.initial_soc must lie in [0,1]");

  if (!finite_all({th.k_t, th.alpha_t, th.beta_chg, th.beta_dis, th.t_amb, th.t_initial}))
    out.push_back("thermal: non-finite value");
  if (!(th.k_t >= 0.0)) out.push_back("thermal.k_t must be >= 0");
  if (!(th.alpha_t >= 0.0)) out.push_back("thermal.alpha_t must be >= 0");
  if (!(th.beta_chg >= 0.0) || !(th.beta_dis >= 0.0)) out.push_back("thermal: beta coefficients must be >= 0");
  if (th.k_t * th.alpha_t * hz.dt_hours > 1.0)
    out.push_back("thermal: k_t * alpha_t * dt_hours > 1 makes the temperature recursion overshoot");

  if (!std::isfinite(ag.k_cyc_dis) || ag.k_cyc_dis < 0.0) out.push_back("aging.k_cyc_dis must be >= 0");
  if (ag.cyc_chg_planes.empty()) out.push_back("aging.cyc_chg_planes: plane set empty");
  if (ag.cal_planes.empty()) out.push_back("aging.cal_planes: plane set empty");
  bool planes_finite = true;
  for (const auto& p : ag.cyc_chg_planes)
    planes_finite &= finite_all({p.a, p.b});
  for (const auto& p : ag.cal_planes)
    planes_finite &= finite_all({p.a, p.b, p.c});
  if (!planes_finite) out.push_back("aging: non-finite plane coefficient");
  if (planes_finite && !ag.cal_planes.empty() && std::isfinite(th.t_amb) &&
      calendar_floor(ag, th) < 0.0)
    out.push_back("aging.cal_planes: plane maximum is negative inside the admissible box");
  if (planes_finite && !ag.cyc_chg_planes.empty() && b.c_rate_max_chg > 0.0 &&
      std::isfinite(b.c_rate_max_chg) && charge_cycle_floor(ag, b) < 0.0)
    out.push_back("aging.cyc_chg_planes: plane maximum is negative inside the admissible box");

  if (!(ec.lambda_cyc >= 0.0) || !std::isfinite(ec.lambda_cyc)) out.push_back("economic.lambda_cyc must be >= 0");
  if (!(ec.lambda_cal >= 0.0) || !std::isfinite(ec.lambda_cal)) out.push_back("economic.lambda_cal must be >= 0");
  if (!(ec.interest_rate >= 0.0) || !std::isfinite(ec.interest_rate))
    out.push_back("economic.interest_rate must be >= 0");
  if (ec.adaptive.window_days < 1) out.push_back("economic.adaptive.window_days must be >= 1");

  const double per_day = 24.0 / hz.dt_hours;
  if (!(hz.dt_hours > 0.0) || !std::isfinite(per_day) || std::abs(per_day - std::round(per_day)) > 1e-9)
    out.push_back("horizon.dt_hours must divide 24 evenly");
  if (hz.commit_days < 1) out.push_back("horizon.commit_days must be >= 1");
  if (hz.window_days < hz.commit_days) out.push_back("horizon.window_days must be >= commit_days");
  return out;
}

Config validate_config(const Config& cfg)
{
  auto violations = config_violations(cfg);
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

double soh_at_eol(const BatteryConfig& battery)
{
  return battery.soh_initial - battery.q_eol;
}

PlantState initial_state(const Config& cfg)
{
  PlantState s;
  s.soh = cfg.battery.soh_initial;
  s.e_batt = cfg.battery.initial_soc * cfg.battery.e_nom * cfg.battery.soh_initial;
  s.temp = cfg.thermal.t_initial;
  return s;
}

}  // namespace bess
