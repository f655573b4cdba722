/*
 * economics.hpp
 *
 * Money math: degradation penalty, discounted revenue, profitability index,
 * the lambda ~ PI rule of thumb and the moving-average lambda estimator.
 */

#pragma once

#include <deque>
#include <span>

namespace bess {

/// EUR per unit fade fraction. Throws std::invalid_argument when q_eol <= 0.
double compute_c_ag(double c_battery, double q_eol);

/// Sum of R_p / (1+i)^p for p = 1.. over the yearly revenues.
double npv(std::span<const double> yearly_revenues, double interest_rate);

/// Throws std::invalid_argument when c_battery <= 0.
double profitability_index(double npv_eur, double c_battery);

/// PI, or PI / (1 + i) when `corrected`.
double hypothesized_lambda(double npv_eur, double c_battery, double interest_rate, bool corrected);

/// Moving mean of per-day revenue-per-fade ratios, normalised by c_ag.
struct AdaptiveLambdaState {
  std::deque<double> samples;
  int window_days = 365;
  double current_lambda = 1.0;  // used until the first sample arrives
};

inline constexpr double kFadeEpsilon = 1e-12;

/// Pushes (revenue / fade) / c_ag for a day with non-negligible fade, evicts
/// beyond the window and refreshes the mean. Days with fade <= kFadeEpsilon
/// leave the state untouched. The mean is floored at zero.
AdaptiveLambdaState adaptive_update(AdaptiveLambdaState state, double day_revenue, double day_fade, double c_ag);

}  // namespace bess
