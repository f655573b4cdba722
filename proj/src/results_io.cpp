/*
 * results_io.cpp
 */

#include "bess/results_io.hpp"

#include "bess/economics.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace bess {

std::string format_number(double v)
{
  if (v == 0.0) return "0";  // no "-0"
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string format_daily_log(std::span<const DailyRecord> daily)
{
  std::string out = "day,revenue_eur,q_cal,q_cyc,soh,fec,lambda_used\n";
  for (const auto& d : daily) {
    out += std::to_string(d.day);
    for (double v : {d.revenue, d.q_cal, d.q_cyc, d.soh, d.fec}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += format_number(d.lambda_cal);
    if (d.lambda_cyc != d.lambda_cal) {
      out += ':';
      out += format_number(d.lambda_cyc);
    }
    out += '\n';
  }
  return out;
}

namespace {

double field(std::string_view s, std::size_t line)
{
  double v;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw std::runtime_error("daily log line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::vector<DailyRecord> parse_daily_log(std::string_view csv)
{
  std::vector<DailyRecord> out;
  std::size_t line_no = 0;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    auto line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "day,revenue_eur,q_cal,q_cyc,soh,fec,lambda_used")
        throw std::runtime_error("daily log: unexpected header");
      continue;
    }
    std::vector<std::string_view> f;
    for (std::size_t pos = 0;;) {
      const auto c = line.find(',', pos);
      f.push_back(line.substr(pos, c - pos));
      if (c == std::string_view::npos) break;
      pos = c + 1;
    }
    if (f.size() != 7) throw std::runtime_error("daily log line " + std::to_string(line_no) + ": expected 7 fields");
    DailyRecord d;
    d.day = static_cast<int>(field(f[0], line_no));
    d.revenue = field(f[1], line_no);
    d.q_cal = field(f[2], line_no);
    d.q_cyc = field(f[3], line_no);
    d.soh = field(f[4], line_no);
    d.fec = field(f[5], line_no);
    const auto colon = f[6].find(':');
    d.lambda_cal = field(f[6].substr(0, colon), line_no);
    d.lambda_cyc = colon == std::string_view::npos ? d.lambda_cal : field(f[6].substr(colon + 1), line_no);
    out.push_back(d);
  }
  if (line_no == 0) throw std::runtime_error("daily log is empty");
  return out;
}

std::vector<double> yearly_revenues(std::span<const DailyRecord> daily)
{
  std::vector<double> years;
  for (const auto& d : daily) {
    const auto y = static_cast<std::size_t>(d.day / 365);
    if (years.size() <= y) years.resize(y + 1, 0.0);
    years[y] += d.revenue;
  }
  return years;
}

LifeSummary summarize(const LifeResult& result, const Config& cfg)
{
  LifeSummary s;
  s.t_eol_years = result.t_eol_years;
  s.npv_eur = npv(result.yearly_revenues, cfg.economic.interest_rate);
  s.pi = cfg.battery.c_battery > 0.0 ? profitability_index(s.npv_eur, cfg.battery.c_battery) : 0.0;
  s.total_fec = result.total_fec();
  const double fade = result.final_state.q_cal_total + result.final_state.q_cyc_total;
  s.q_cal_share = fade > 0.0 ? result.final_state.q_cal_total / fade : 0.0;
  return s;
}

LifeSummary summarize(std::span<const DailyRecord> daily, double c_battery, double interest_rate)
{
  LifeSummary s;
  s.t_eol_years = static_cast<double>(daily.size()) / 365.25;
  s.npv_eur = npv(yearly_revenues(daily), interest_rate);
  s.pi = c_battery > 0.0 ? profitability_index(s.npv_eur, c_battery) : 0.0;
  double cal = 0.0, cyc = 0.0;
  for (const auto& d : daily) {
    s.total_fec += d.fec;
    cal += d.q_cal;
    cyc += d.q_cyc;
  }
  s.q_cal_share = cal + cyc > 0.0 ? cal / (cal + cyc) : 0.0;
  return s;
}

std::string format_summary(const LifeSummary& s)
{
  nlohmann::ordered_json j;
  j["t_eol_years"] = s.t_eol_years;
  j["npv_eur"] = s.npv_eur;
  j["pi"] = s.pi;
  j["total_fec"] = s.total_fec;
  j["q_cal_share"] = s.q_cal_share;
  return j.dump(2) + "\n";
}

std::string format_sweep(std::span<const SweepRow> rows)
{
  std::string out = "lambda_cal,lambda_cyc,interest_rate,npv_eur,pi,t_eol_years,total_fec,q_cal_share,error\n";
  for (const auto& r : rows) {
    for (double v : {r.lambda_cal, r.lambda_cyc, r.interest_rate, r.npv, r.pi, r.t_eol_years, r.total_fec,
                     r.q_cal_share}) {
      out += format_number(v);
      out += ',';
    }
    std::string err = r.error;
    for (auto& c : err)
      if (c == ',' || c == '\n' || c == '"') c = ' ';
    out += err;
    out += '\n';
  }
  return out;
}

std::string format_peak(const SweepRow& peak, SweepMode mode)
{
  nlohmann::ordered_json j;
  j["mode"] = to_string(mode);
  j["lambda_star"] = row_lambda(peak, mode);
  j["lambda_cal"] = peak.lambda_cal;
  j["lambda_cyc"] = peak.lambda_cyc;
  j["interest_rate"] = peak.interest_rate;
  j["npv_eur"] = peak.npv;
  j["pi"] = peak.pi;
  j["t_eol_years"] = peak.t_eol_years;
  return j.dump(2) + "\n";
}

}  // namespace bess
