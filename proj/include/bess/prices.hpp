/*
 * prices.hpp
 *
 * Price series: CSV ingestion with resampling, writing, and a seeded
 * synthetic generator used in place of market data.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bess {

struct PriceSeries {
  std::int64_t start = 0;  //!< UTC seconds since the epoch
  int step_minutes = 15;
  std::vector<double> values;  //!< EUR/kWh
};

class PriceFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Accepts "YYYY-MM-DDTHH:MM[:SS][Z]" (a space may replace the T).
std::int64_t parse_timestamp(std::string_view text);
std::string format_timestamp(std::int64_t seconds);

/// Parses a `timestamp,price_eur_mwh` CSV, takes absolute values, converts to
/// EUR/kWh and resamples to `target_step` minutes (zero-order hold when
/// refining, block mean when coarsening).
PriceSeries parse_prices(std::string_view csv, int target_step_minutes);
PriceSeries ingest_prices(const std::filesystem::path& path, int target_step_minutes);

/// Writes EUR/MWh as plain decimals; parse_prices restores every value exactly.
std::string format_prices(const PriceSeries& series);
void write_prices(const PriceSeries& series, const std::filesystem::path& path);

struct SyntheticParams {
  double base = 0.05;             //!< EUR/kWh
  double daily_amplitude = 0.03;
  double weekly_amplitude = 0.02;
  double noise = 0.02;
  int step_minutes = 15;
};

/// Daily and weekly sinusoids plus Gaussian noise, clamped at zero.
/// Values are rounded to 0.01 EUR/MWh.
PriceSeries generate_synthetic_prices(std::uint64_t seed, int days, const SyntheticParams& params = {});

}  // namespace bess
