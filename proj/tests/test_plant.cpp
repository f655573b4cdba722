#include <gtest/gtest.h>

#include "bess/plant.hpp"
#include "fixtures.hpp"

#include <random>

using namespace bess;

TEST(StepPlant, RestingAtAmbientOnlyAgesByCalendar)
{
  const auto cfg = fixture::small_config();
  const auto s = initial_state(cfg);
  const auto r = step_plant(s, 0.0, 0.0, 0.07, s.soh, cfg);
  EXPECT_EQ(r.state.temp, 25.0);
  EXPECT_EQ(r.outcome.fec, 0.0);
  EXPECT_EQ(r.outcome.revenue, 0.0);
  EXPECT_EQ(r.outcome.q_cyc, 0.0);
  EXPECT_DOUBLE_EQ(r.outcome.q_cal, cfg.aging.calendar_fade(0.5, 25.0));
  EXPECT_GT(r.outcome.q_cal, 0.0);
}

TEST(StepPlant, OneCQuarterHourIsOneEighthCycle)
{
  const auto cfg = fixture::small_config();
  const auto r = step_plant(initial_state(cfg), 1.0, 0.0, 0.0, 1.0, cfg);
  EXPECT_DOUBLE_EQ(r.outcome.fec, 0.125);
  EXPECT_DOUBLE_EQ(r.state.e_batt, 0.75);
}

TEST(StepPlant, ThermalStep)
{
  // k_t = 1, alpha = 0.1, dt = 0.25, T = T_amb = 25 and a heat input of 4.
  auto cfg = fixture::small_config();
  cfg.thermal.beta_chg = 4.0;
  const auto r = step_plant(initial_state(cfg), 1.0, 0.0, 0.0, 1.0, cfg);
  EXPECT_DOUBLE_EQ(r.state.temp, 26.0);
}

TEST(StepPlant, RevenueSign)
{
  const auto cfg = fixture::small_config();
  const auto s = initial_state(cfg);
  const auto buy = step_plant(s, 0.5, 0.0, 0.1, 1.0, cfg);
  EXPECT_DOUBLE_EQ(buy.outcome.revenue, -0.1 * 0.5 / 0.95 * 0.25);
  const auto sell = step_plant(s, 0.0, 0.5, 0.1, 1.0, cfg);
  EXPECT_DOUBLE_EQ(sell.outcome.revenue, 0.1 * 0.5 * 0.95 * 0.25);
}

TEST(StepPlant, BoundViolationsFault)
{
  const auto cfg = fixture::small_config();
  auto s = initial_state(cfg);
  EXPECT_THROW(step_plant(s, 1.5, 0.0, 0.0, 1.0, cfg), SimulationFault);
  s.e_batt = 0.9;
  EXPECT_THROW(step_plant(s, 1.0, 0.0, 0.0, 0.9, cfg), SimulationFault);
  EXPECT_NO_THROW(step_plant(s, 0.0, 1.0, 0.0, 0.9, cfg));
}

TEST(ApplyDay, AllZeroDay)
{
  const auto cfg = fixture::small_config();
  const auto s = initial_state(cfg);
  const std::vector<double> zero(96, 0.0), prices(96, 0.05);
  const auto d = apply_day(s, zero, zero, prices, cfg);
  EXPECT_EQ(d.revenue, 0.0);
  EXPECT_EQ(d.fec, 0.0);
  EXPECT_EQ(d.state_out.day_index, 1);
  EXPECT_NEAR(d.state_out.soh, 1.0 - 96 * cfg.aging.calendar_fade(0.5, 25.0), 1e-13);
  EXPECT_EQ(d.state_out.e_batt, s.e_batt);
}

TEST(ApplyDay, LosslessRoundTripRestoresEnergy)
{
  auto cfg = fixture::small_config();
  cfg.battery.eta_chg = cfg.battery.eta_dis = 1.0;
  std::vector<double> pc(96, 0.0), pd(96, 0.0), prices(96, 0.05);
  for (int t = 0; t < 8; ++t) {
    pc[t] = 0.25;
    pd[40 + t] = 0.25;
  }
  const auto s = initial_state(cfg);
  const auto d = apply_day(s, pc, pd, prices, cfg);
  EXPECT_DOUBLE_EQ(d.state_out.e_batt, s.e_batt);
  EXPECT_NEAR(d.revenue, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(d.fec, 0.5);
}

TEST(ApplyDay, FaultNamesDayAndStep)
{
  const auto cfg = fixture::small_config();
  std::vector<double> pc(96, 1.0), pd(96, 0.0), prices(96, 0.05);
  try {
    apply_day(initial_state(cfg), pc, pd, prices, cfg);
    FAIL() << "expected a fault";
  }
  catch (const SimulationFault& f) {
    EXPECT_NE(std::string(f.what()).find("day 0, step 2"), std::string::npos) << f.what();
  }
  EXPECT_THROW(apply_day(initial_state(cfg), std::vector<double>(5), pd, prices, cfg), std::invalid_argument);
}

TEST(ApplyDay, StateInvariantsOnRandomDays)
{
  const auto cfg = fixture::small_config();
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PlantState s = initial_state(cfg);
  for (int day = 0; day < 30; ++day) {
    std::vector<double> pc(96), pd(96), prices(96, 0.05);
    double e = s.e_batt;
    const double cap = s.soh * cfg.battery.e_nom;
    for (int t = 0; t < 96; ++t) {
      const double p = std::clamp(2 * u(rng) - 1, -e / 0.25, (cap - e) / 0.25);
      pc[t] = std::max(p, 0.0);
      pd[t] = std::max(-p, 0.0);
      e += (pc[t] - pd[t]) * 0.25;
    }
    const auto d = apply_day(s, pc, pd, prices, cfg);
    EXPECT_LE(d.state_out.soh, s.soh);
    EXPECT_GE(d.q_cal, 0.0);
    EXPECT_GE(d.q_cyc, 0.0);
    EXPECT_NEAR(d.state_out.e_batt, e, 1e-12);
    EXPECT_NEAR(d.state_out.soh, cfg.battery.soh_initial - d.state_out.q_cal_total - d.state_out.q_cyc_total, 1e-13);
    s = d.state_out;
    s.e_batt = std::min(s.e_batt, s.soh);
  }
}
