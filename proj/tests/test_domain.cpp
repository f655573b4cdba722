#include <gtest/gtest.h>

#include "bess/config_io.hpp"
#include "bess/domain.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace bess;

namespace {

bool mentions(const std::vector<std::string>& v, const std::string& needle)
{
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Validate, SmallConfigIsValid)
{
  EXPECT_TRUE(config_violations(fixture::small_config()).empty());
}

TEST(Validate, EfficiencyAboveOneIsRejected)
{
  auto c = fixture::small_config();
  c.battery.eta_chg = 1.05;
  const auto v = config_violations(c);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("eta_chg"), std::string::npos);
  EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(Validate, EmptyCalendarPlanesRejected)
{
  auto c = fixture::small_config();
  c.aging.cal_planes.clear();
  EXPECT_TRUE(mentions(config_violations(c), "plane set empty"));
}

TEST(Validate, ReportsEveryViolation)
{
  auto c = fixture::small_config();
  c.battery.eta_chg = 0.0;
  c.battery.q_eol = 1.5;
  c.horizon.commit_days = 0;
  try {
    validate_config(c);
    FAIL() << "expected ConfigError";
  }
  catch (const ConfigError& e) {
    EXPECT_EQ(e.violations().size(), 3u);
  }
}

TEST(Validate, NegativePlaneMaximumRejected)
{
  auto c = fixture::small_config();
  c.aging.cal_planes = {{-1e-6, 1e-6, 0.0}};  // negative at SOC 0
  EXPECT_TRUE(mentions(config_violations(c), "aging.cal_planes"));
}

TEST(Validate, InteriorMinimumOfPlanesIsFound)
{
  // V-shaped calendar function of SOC with its minimum at 0.5: corners are
  // positive but the middle dips below zero.
  auto c = fixture::small_config();
  c.aging.cal_planes = {{1e-6, -3e-6, 0.0}, {-2e-6, 3e-6, 0.0}};
  EXPECT_NEAR(calendar_floor(c.aging, c.thermal), -0.5e-6, 1e-15);
  EXPECT_TRUE(mentions(config_violations(c), "aging.cal_planes"));
}

TEST(Validate, ThermalOvershootRejected)
{
  auto c = fixture::small_config();
  c.thermal.alpha_t = 5.0;
  EXPECT_TRUE(mentions(config_violations(c), "k_t * alpha_t"));
}

TEST(Validate, TimestepMustDivideDay)
{
  auto c = fixture::small_config();
  c.horizon.dt_hours = 0.7;
  EXPECT_TRUE(mentions(config_violations(c), "dt_hours"));
}

TEST(Domain, SohAtEol)
{
  BatteryConfig b;
  EXPECT_DOUBLE_EQ(soh_at_eol(b), 0.8);
}

TEST(Domain, InitialStateIsHalfFull)
{
  auto c = fixture::small_config();
  c.battery.e_nom = 4.0;
  c.battery.soh_initial = 0.9;
  const auto s = initial_state(c);
  EXPECT_DOUBLE_EQ(s.e_batt, 0.5 * 4.0 * 0.9);
  EXPECT_DOUBLE_EQ(s.soh, 0.9);
  EXPECT_DOUBLE_EQ(s.temp, 25.0);
}

TEST(Domain, PlaneMaxima)
{
  const auto c = fixture::small_config();
  EXPECT_DOUBLE_EQ(c.aging.charge_cycle_fade(0.0), 0.0);
  EXPECT_DOUBLE_EQ(c.aging.charge_cycle_fade(1.0), -5e-6 + 1.5e-5);
  EXPECT_DOUBLE_EQ(c.aging.calendar_fade(0.0, 0.0), 1.25e-7);
}

TEST(ConfigIo, RoundTripIsByteIdentical)
{
  const auto c = fixture::small_config();
  const auto text = serialize_config(c);
  const auto back = parse_config(text);
  EXPECT_EQ(serialize_config(back), text);
  EXPECT_EQ(back.aging.cal_planes.size(), 3u);
  EXPECT_EQ(back.aging.cal_planes[2].b, c.aging.cal_planes[2].b);
  EXPECT_EQ(back.horizon.dt_hours, 0.25);
}

TEST(ConfigIo, MissingKeysKeepDefaults)
{
  const auto c = parse_config(R"({"battery": {"e_nom": 2.5}})");
  EXPECT_EQ(c.battery.e_nom, 2.5);
  EXPECT_EQ(c.battery.q_eol, 0.2);
  EXPECT_EQ(c.horizon.window_days, 7);
}

TEST(ConfigIo, UnknownKeyIsAnError)
{
  EXPECT_THROW(parse_config(R"({"battery": {"e_nmo": 2.5}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"market": {}})"), ConfigError);
}

TEST(ConfigIo, WrongTypesAreErrors)
{
  EXPECT_THROW(parse_config(R"({"battery": {"e_nom": "big"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"horizon": {"window_days": 1.5}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"aging": {"cal_planes": [[1, 2]]}})"), ConfigError);
  EXPECT_THROW(parse_config("{not json"), ConfigError);
}

TEST(ConfigIo, BundledConfigsLoad)
{
  for (const char* name : {"default.json", "reduced.json"}) {
    const auto c = load_config(fixture::data_path(name));
    EXPECT_EQ(c.aging.cal_planes.size(), 3u) << name;
    EXPECT_EQ(c.aging.cyc_chg_planes.size(), 2u) << name;
  }
}

TEST(ConfigIo, BundledConfigsDescribeTheSameBattery)
{
  // Plane coefficients are per step, so the two files differ only by the
  // timestep ratio.
  const auto d = load_config(fixture::data_path("default.json"));
  const auto r = load_config(fixture::data_path("reduced.json"));
  const double k = d.horizon.dt_hours / r.horizon.dt_hours;
  for (std::size_t i = 0; i < d.aging.cal_planes.size(); ++i) {
    EXPECT_NEAR(d.aging.cal_planes[i].a, k * r.aging.cal_planes[i].a, 1e-20);
    EXPECT_NEAR(d.aging.cal_planes[i].b, k * r.aging.cal_planes[i].b, 1e-20);
  }
  EXPECT_EQ(d.aging.k_cyc_dis, r.aging.k_cyc_dis);
}
