/*
 * plant.hpp
 *
 * Forward simulation of the "true" battery. Uses the same equations as the
 * dispatch LP, without any lambda weighting, and is the ground truth every
 * dispatch policy is scored against.
 */

#pragma once

#include "bess/domain.hpp"

#include <span>
#include <stdexcept>

namespace bess {

class SimulationFault : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct StepOutcome {
  double revenue = 0.0;  //!< EUR, positive when selling
  double q_cal = 0.0;
  double q_cyc = 0.0;
  double fec = 0.0;
};

struct StepResult {
  PlantState state;
  StepOutcome outcome;
};

/// Advances one timestep. `soh_ref` is the SOH frozen for the current
/// committed block: it sets the energy bound and the SOC denominator.
/// Throws SimulationFault when a power or the resulting energy leaves its
/// bounds by more than the tolerance.
StepResult step_plant(const PlantState& state, double p_chg, double p_dis, double price, double soh_ref,
                      const Config& cfg);

struct DayOutcome {
  double revenue = 0.0;
  double q_cal = 0.0;
  double q_cyc = 0.0;
  double fec = 0.0;
  PlantState state_out;
};

/// Folds step_plant over one day of committed powers and advances day_index.
/// soh_ref < 0 freezes the SOH at the start of the day.
DayOutcome apply_day(const PlantState& state, std::span<const double> p_chg, std::span<const double> p_dis,
                     std::span<const double> prices, const Config& cfg, double soh_ref = -1.0);

}  // namespace bess
