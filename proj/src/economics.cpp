/*
 * economics.cpp
 */

#include "bess/economics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bess {

double compute_c_ag(double c_battery, double q_eol)
{
  if (!(q_eol > 0.0)) throw std::invalid_argument("end-of-life fade must be positive");
  return c_battery / q_eol;
}

double npv(std::span<const double> yearly_revenues, double interest_rate)
{
  double total = 0.0;
  double discount = 1.0;
  for (double r : yearly_revenues) {
    discount *= 1.0 + interest_rate;
    total += r / discount;
  }
  return total;
}

double profitability_index(double npv_eur, double c_battery)
{
  if (!(c_battery > 0.0)) throw std::invalid_argument("battery cost must be positive");
  return npv_eur / c_battery;
}

double hypothesized_lambda(double npv_eur, double c_battery, double interest_rate, bool corrected)
{
  const double pi = profitability_index(npv_eur, c_battery);
  return corrected ? pi / (1.0 + interest_rate) : pi;
}

AdaptiveLambdaState adaptive_update(AdaptiveLambdaState state, double day_revenue, double day_fade, double c_ag)
{
  if (!(c_ag > 0.0)) throw std::invalid_argument("adaptive lambda needs a positive degradation penalty");
  if (!(day_fade > kFadeEpsilon)) return state;
  state.samples.push_back(day_revenue / day_fade / c_ag);
  while (static_cast<int>(state.samples.size()) > state.window_days)
    state.samples.pop_front();
  const double mean = std::accumulate(state.samples.begin(), state.samples.end(), 0.0) /
                      static_cast<double>(state.samples.size());
  state.current_lambda = std::max(0.0, mean);
  return state;
}

}  // namespace bess
