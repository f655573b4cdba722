/*
 * domain.hpp
 *
 * Configuration and state types shared by the whole simulator.
 *
 * Units: energy kWh, power kW, time h, temperature degC, money EUR.
 * Capacity fade is a fraction of nominal capacity (0.20 = end of life), and
 * every aging plane coefficient is a fade fraction per optimisation timestep.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bess {

struct BatteryConfig {
  double e_nom = 1.0;           //!< nominal beginning-of-life capacity [kWh]
  double c_rate_max_chg = 1.0;  //!< [1/h]
  double c_rate_max_dis = 1.0;  //!< [1/h]
  double eta_chg = 0.95;
  double eta_dis = 0.95;
  double c_battery = 250.0;     //!< investment cost [EUR]
  double q_eol = 0.20;          //!< fade at end of life
  double soh_initial = 1.0;
  double initial_soc = 0.5;     //!< start-of-life fill fraction of e_nom * soh_initial
};

struct ThermalConfig {
  double k_t = 0.0;
  double alpha_t = 0.0;
  double beta_chg = 0.0;
  double beta_dis = 0.0;
  double t_amb = 25.0;
  double t_initial = 25.0;
};

/// Charge-cycle plane: fade >= a + b * (charge C-rate).
struct CyclePlane {
  double a = 0.0;
  double b = 0.0;
};

/// Calendar plane: fade >= a + b * SOC_avg + c * T_avg.
struct CalendarPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct AgingModel {
  double k_cyc_dis = 0.0;  //!< fade per full equivalent cycle
  std::vector<CyclePlane> cyc_chg_planes;
  std::vector<CalendarPlane> cal_planes;
  /// Off by default: k_cyc_dis multiplies the whole step throughput. When set,
  /// only discharge throughput counts.
  bool discharge_throughput_only = false;

  double charge_cycle_fade(double c_rate) const;
  double calendar_fade(double soc_avg, double t_avg) const;
};

struct AdaptiveConfig {
  bool enabled = false;
  int window_days = 365;
};

struct EconomicConfig {
  double lambda_cyc = 1.0;
  double lambda_cal = 1.0;
  double interest_rate = 0.0;  //!< per year
  AdaptiveConfig adaptive;
};

struct HorizonConfig {
  double dt_hours = 0.25;
  int window_days = 7;
  int commit_days = 1;

  int steps_per_day() const;
  int window_steps() const { return window_days * steps_per_day(); }
};

struct Config {
  BatteryConfig battery;
  ThermalConfig thermal;
  AgingModel aging;
  EconomicConfig economic;
  HorizonConfig horizon;
};

/// Mutable life state of one simulated battery.
struct PlantState {
  double e_batt = 0.0;  //!< stored energy [kWh]
  double soh = 1.0;
  double temp = 25.0;
  double fec_total = 0.0;
  double q_cal_total = 0.0;
  double q_cyc_total = 0.0;
  int day_index = 0;
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

private:
  std::vector<std::string> violations_;
};

/// Every invariant the configuration breaks; empty when valid.
std::vector<std::string> config_violations(const Config& cfg);

/// Returns the configuration unchanged when valid, throws ConfigError otherwise.
Config validate_config(const Config& cfg);

double soh_at_eol(const BatteryConfig& battery);

/// Smallest value the calendar plane maximum takes over SOC in [0,1] and
/// T in [t_amb - 20, t_amb + 40].
double calendar_floor(const AgingModel& aging, const ThermalConfig& thermal);

/// Smallest value the charge-cycle plane maximum takes over C-rate in [0, c_rate_max_chg].
double charge_cycle_floor(const AgingModel& aging, const BatteryConfig& battery);

PlantState initial_state(const Config& cfg);

}  // namespace bess
