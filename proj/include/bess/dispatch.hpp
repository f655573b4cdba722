/*
 * dispatch.hpp
 *
 * Builds the linear program for one rolling window: arbitrage revenue plus the
 * lambda-weighted degradation penalty, subject to power limits, the stored
 * energy and temperature recursions, and epigraph rows for the piecewise-affine
 * charge-cycle and calendar fade.
 *
 * Per step the LP carries six variables: charge/discharge power (battery side),
 * stored energy, temperature and the two epigraph variables. AC power, FEC
 * increment, SOC/T averages and heat generation are affine in these and are
 * substituted inline.
 */

#pragma once

#include "bess/domain.hpp"
#include "bess/lp.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace bess {

struct WindowProblem {
  std::vector<double> prices;  //!< EUR/kWh per step, non-negative
  PlantState state_in;         //!< supplies E_0, SOH_0 and T_0
  double lambda_cyc = 1.0;
  double lambda_cal = 1.0;
  double c_ag = 0.0;           //!< EUR per unit fade fraction

  int n_steps() const { return static_cast<int>(prices.size()); }
};

/// Dense per-step variable indices. Epigraph variables are stored scaled:
/// fade = value * fade_scale.
struct VariableLayout {
  enum Slot { p_chg = 0, p_dis, e, temp, q_cyc_chg, q_cal, slots };

  int n_steps = 0;
  int rows_per_step = 0;
  double cyc_scale = 1.0;
  double cal_scale = 1.0;

  int index(int step, Slot slot) const { return step * slots + slot; }
  int n_vars() const { return n_steps * slots; }
};

class InfeasibleInputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct WindowLp {
  lp::SparseLp lp;
  VariableLayout layout;
};

/// Throws InfeasibleInputError when the anchor state violates its own bounds
/// or a price is negative.
WindowLp build_window_lp(const WindowProblem& wp, const Config& cfg);

struct Schedule {
  std::vector<double> p_chg, p_dis, e, temp, q_cal, q_cyc_chg;
  std::vector<int> simultaneous_steps;  //!< steps where both powers are active

  int n_steps() const { return static_cast<int>(p_chg.size()); }
};

/// Throws std::runtime_error unless the solution is optimal. Tiny negative
/// powers from the solver are clipped to zero.
Schedule extract_schedule(const lp::LpSolution& sol, const VariableLayout& layout, double e_nom,
                          double eps_simul_factor = 1e-6);

/// Per-step fade implied by the formulation's own rows for a given power
/// schedule: equality rows are solved forward, epigraph variables set to their
/// tightest value and the aging part of the objective read back.
struct FadeBreakdown {
  std::vector<double> q_cal, q_cyc;  //!< q_cyc includes the throughput term
  double total() const;
};

FadeBreakdown formulation_fade(const Config& cfg, const PlantState& state_in, std::span<const double> p_chg,
                               std::span<const double> p_dis);

/// Shifts an optimal basis forward by `shift_steps` so it can seed the next
/// window. The tail repeats the last steps of the old basis, and the basic
/// count is repaired with logical columns. Empty result when shapes differ.
lp::Basis shift_basis(const lp::Basis& basis, const VariableLayout& layout, int shift_steps);

}  // namespace bess
