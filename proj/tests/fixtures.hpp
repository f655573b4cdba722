/*
 * fixtures.hpp
 *
 * Small configurations shared by the unit tests.
 */

#pragma once

#include "bess/domain.hpp"

#include <string>

namespace bess::fixture {

inline std::string data_path(const std::string& name)
{
  return std::string(BESS_DATA_DIR) + "/" + name;
}

/// Quarter-hour steps, mild heating and a convex three-plane calendar model.
inline Config small_config()
{
  Config c;
  c.battery.e_nom = 1.0;
  c.battery.c_battery = 30.0;
  c.thermal = {1.0, 0.1, 1.0, 1.0, 25.0, 25.0};
  c.aging.k_cyc_dis = 5e-5;
  c.aging.cyc_chg_planes = {{0.0, 5e-6}, {-5e-6, 1.5e-5}};
  c.aging.cal_planes = {{1.25e-7, 0.0, 0.0}, {-1.825e-7, 5e-7, 1.25e-8}, {-9.825e-7, 1.5e-6, 1.25e-8}};
  c.horizon = {0.25, 1, 1};
  return c;
}

}  // namespace bess::fixture
