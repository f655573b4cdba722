/*
 * life.hpp
 *
 * Rolling-horizon driver: optimise a window, commit its first day(s) to the
 * plant, re-anchor at the plant state, repeat until end of life.
 */

#pragma once

#include "bess/domain.hpp"
#include "bess/lp.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace bess {

struct StaticLambda {
  double cyc = 1.0;
  double cal = 1.0;
};

struct AdaptiveLambda {
  int window_days = 365;
};

using LambdaPolicy = std::variant<StaticLambda, AdaptiveLambda>;

struct DailyRecord {
  int day = 0;
  double revenue = 0.0;
  double q_cal = 0.0;
  double q_cyc = 0.0;
  double soh = 0.0;  //!< after the day
  double fec = 0.0;  //!< FEC incurred during the day
  double lambda_cyc = 0.0;
  double lambda_cal = 0.0;
};

struct LifeResult {
  std::vector<DailyRecord> daily;
  double t_eol_years = 0.0;
  std::vector<double> yearly_revenues;  //!< 365-day blocks
  PlantState final_state;
  int simultaneity_warnings = 0;
  long long lp_iterations = 0;

  double total_revenue() const;
  double total_fec() const { return final_state.fec_total; }
};

class LifeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::optional<PlantState> initial;  //!< defaults to initial_state(cfg)
  int max_days = 365 * 200;           //!< abort if end of life is never reached
  bool warm_start = true;
  lp::SolverOptions solver;
};

struct WindowAnchor {
  double e0 = 0.0;
  double soh0 = 1.0;
  double t0 = 25.0;
};

/// Next window starts from the plant's energy (clipped to the shrunken
/// capacity), SOH and temperature.
WindowAnchor update_quasi_steady_state(const PlantState& state, const Config& cfg);

/// `prices` holds whole days at the configured timestep and is tiled
/// cyclically. Throws LifeError on solver failure (naming the window) or a
/// non-finite adaptive lambda.
LifeResult run_life(const Config& cfg, std::span<const double> prices, const LambdaPolicy& policy,
                    const RunOptions& opts = {});

}  // namespace bess
