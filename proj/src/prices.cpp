/*
 * prices.cpp
 */

#include "bess/prices.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace bess {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

/// EUR/MWh text to EUR/kWh, dividing by 1000 in decimal so the result is the
/// correctly rounded value of the written number.
bool parse_mwh(std::string_view s, double& out)
{
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::string text(s);
  const auto e = text.find_first_of("eE");
  long exp = -3;
  if (e != std::string::npos) {
    const std::string_view tail(text.c_str() + e + 1);
    long x = 0;
    auto [p, ec] = std::from_chars(tail.data() + (tail.starts_with('+') ? 1 : 0), tail.data() + tail.size(), x);
    if (ec != std::errc() || p != tail.data() + tail.size() || tail.empty()) return false;
    exp += x;
    text.resize(e);
  }
  if (text.empty() || text.find_first_of("eEinfINFxX") != std::string::npos) return false;
  text += 'e' + std::to_string(exp);
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && p == text.data() + text.size() && std::isfinite(out);
}

/// Plain decimal text of 1000 * v whose parse_mwh is exactly v.
std::string format_mwh(double v)
{
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  const std::string sci(buf, end);
  const auto e = sci.find('e');
  std::string digits;
  bool neg = false;
  for (std::size_t k = 0; k < e; ++k) {
    if (sci[k] == '-') neg = true;
    else if (sci[k] != '.') digits += sci[k];
  }
  const long point = 1 + std::stol(sci.substr(e + 1)) + 3;  // digits before the decimal point
  const long n = static_cast<long>(digits.size());
  std::string out = neg ? "-" : "";
  if (point <= 0) out += "0." + std::string(-point, '0') + digits;
  else if (point >= n) out += digits + std::string(point - n, '0');
  else out += digits.substr(0, point) + "." + digits.substr(point);
  return out;
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text)
{
  const std::string s(trim(text));
  int y, mo, d, h, mi, sec = 0, n = 0;
  char sep;
  const int got = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d%n", &y, &mo, &d, &sep, &h, &mi, &n);
  if (got < 6 || (sep != 'T' && sep != ' ')) throw PriceFormatError("bad timestamp '" + s + "'");
  std::string_view rest(s.c_str() + n);
  if (!rest.empty() && rest.front() == ':') {
    int m = 0;
    if (std::sscanf(rest.data(), ":%2d%n", &sec, &m) != 1) throw PriceFormatError("bad timestamp '" + s + "'");
    rest.remove_prefix(m);
  }
  if (rest == "Z") rest = {};
  if (!rest.empty()) throw PriceFormatError("bad timestamp '" + s + "'");
  const std::chrono::year_month_day ymd{std::chrono::year(y), std::chrono::month(mo), std::chrono::day(d)};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) throw PriceFormatError("bad timestamp '" + s + "'");
  const auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + sec;
}

std::string format_timestamp(std::int64_t seconds)
{
  const auto days = static_cast<int>(std::floor(seconds / 86400.0));
  const std::int64_t rem = seconds - static_cast<std::int64_t>(days) * 86400;
  const std::chrono::year_month_day ymd{std::chrono::sys_days(std::chrono::days(days))};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return buf;
}

PriceSeries parse_prices(std::string_view csv, int target_step_minutes)
{
  if (target_step_minutes <= 0) throw std::invalid_argument("target step must be positive");
  std::vector<std::int64_t> stamps;
  std::vector<double> raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    const auto line = trim(csv.substr(0, nl));
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "timestamp,price_eur_mwh")
        throw PriceFormatError("line 1: expected header 'timestamp,price_eur_mwh'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw PriceFormatError("line " + std::to_string(line_no) + ": expected two fields");
    std::int64_t ts;
    try {
      ts = parse_timestamp(line.substr(0, comma));
    }
    catch (const PriceFormatError& e) {
      throw PriceFormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
    double v;
    if (!parse_mwh(line.substr(comma + 1), v))
      throw PriceFormatError("line " + std::to_string(line_no) + ": bad price");
    if (!stamps.empty() && ts <= stamps.back())
      throw PriceFormatError("line " + std::to_string(line_no) + ": timestamps not increasing");
    stamps.push_back(ts);
    raw.push_back(std::abs(v));
  }
  if (!header_seen) throw PriceFormatError("empty price file");
  if (raw.empty()) throw PriceFormatError("price file has no rows");

  std::int64_t step = 3600;
  if (stamps.size() > 1) step = stamps[1] - stamps[0];
  else step = static_cast<std::int64_t>(target_step_minutes) * 60;
  for (std::size_t k = 1; k < stamps.size(); ++k) {
    const auto d = stamps[k] - stamps[k - 1];
    if (d > step)
      throw PriceFormatError("gap between " + format_timestamp(stamps[k - 1]) + " and " + format_timestamp(stamps[k]));
    if (d != step)
      throw PriceFormatError("irregular spacing at " + format_timestamp(stamps[k]));
  }
  if (step % 60 != 0) throw PriceFormatError("source step is not a whole number of minutes");
  const int src = static_cast<int>(step / 60);

  PriceSeries out;
  out.start = stamps.front();
  out.step_minutes = target_step_minutes;
  if (src == target_step_minutes) {
    out.values = std::move(raw);
  }
  else if (src > target_step_minutes) {
    if (src % target_step_minutes != 0) throw PriceFormatError("source step not a multiple of target step");
    const int rep = src / target_step_minutes;
    out.values.reserve(raw.size() * rep);
    for (double v : raw)
      out.values.insert(out.values.end(), rep, v);
  }
  else {
    if (target_step_minutes % src != 0) throw PriceFormatError("target step not a multiple of source step");
    const std::size_t blk = target_step_minutes / src;
    if (raw.size() % blk != 0) throw PriceFormatError("series does not fill a whole number of target steps");
    for (std::size_t k = 0; k < raw.size(); k += blk) {
      double s = 0.0;
      for (std::size_t j = 0; j < blk; ++j)
        s += raw[k + j];
      out.values.push_back(s / static_cast<double>(blk));
    }
  }
  return out;
}

PriceSeries ingest_prices(const std::filesystem::path& path, int target_step_minutes)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PriceFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_prices(ss.str(), target_step_minutes);
}

std::string format_prices(const PriceSeries& series)
{
  std::string out = "timestamp,price_eur_mwh\n";
  std::int64_t t = series.start;
  for (double v : series.values) {
    const auto best = format_mwh(v);
    out += format_timestamp(t);
    out += ',';
    out += best;
    out += '\n';
    t += series.step_minutes * 60;
  }
  return out;
}

void write_prices(const PriceSeries& series, const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_prices(series);
}

PriceSeries generate_synthetic_prices(std::uint64_t seed, int days, const SyntheticParams& params)
{
  if (params.base < 0 || params.daily_amplitude < 0 || params.weekly_amplitude < 0 || params.noise < 0 ||
      params.step_minutes <= 0 || 1440 % params.step_minutes != 0)
    throw std::invalid_argument("synthetic price parameters must be non-negative and the step must divide a day");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int spd = 1440 / params.step_minutes;
  PriceSeries out;
  out.start = parse_timestamp("2021-01-01T00:00Z");
  out.step_minutes = params.step_minutes;
  out.values.reserve(static_cast<std::size_t>(days) * spd);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int d = 0; d < days; ++d) {
    for (int k = 0; k < spd; ++k) {
      const double hour = 24.0 * k / spd;
      // Trough before dawn, peak in the early evening.
      const double daily = -std::cos(two_pi * (hour - 6.0) / 24.0);
      const double weekly = std::cos(two_pi * (d % 7 + hour / 24.0) / 7.0);
      double v = params.base + params.daily_amplitude * daily + params.weekly_amplitude * weekly;
      if (params.noise > 0.0) v += params.noise * noise(rng);
      v = std::max(0.0, v);
      out.values.push_back(std::round(v * 1e5) / 1e5);
    }
  }
  return out;
}

}  // namespace bess
