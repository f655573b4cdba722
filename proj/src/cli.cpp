/*
 * cli.cpp
 *
 * Subcommands: simulate, sweep, gen-prices, analyze.
 */

#include "bess/cli.hpp"

#include "bess/config_io.hpp"
#include "bess/economics.hpp"
#include "bess/experiments.hpp"
#include "bess/life.hpp"
#include "bess/prices.hpp"
#include "bess/results_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bess {

namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text)
{
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonInputs {
  std::string config;
  std::string prices;
  std::uint64_t seed = 7;
};

void add_common(CLI::App* cmd, CommonInputs& in)
{
  cmd->add_option("--config", in.config, "configuration JSON")->required();
  cmd->add_option("--prices", in.prices, "price CSV; a synthetic year is generated when omitted");
  cmd->add_option("--seed", in.seed, "seed for the synthetic year")->capture_default_str();
}

Config load(const CommonInputs& in)
{
  return load_config(in.config);
}

std::vector<double> load_prices(const CommonInputs& in, const Config& cfg)
{
  const double minutes = cfg.horizon.dt_hours * 60.0;
  if (std::abs(minutes - std::round(minutes)) > 1e-9)
    throw InputError("horizon.dt_hours must be a whole number of minutes");
  const int step = static_cast<int>(std::lround(minutes));
  if (in.prices.empty()) {
    SyntheticParams p;
    p.step_minutes = step;
    return generate_synthetic_prices(in.seed, 365, p).values;
  }
  return ingest_prices(in.prices, step).values;
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    std::size_t used = 0;
    double x;
    try {
      x = std::stod(tok, &used);
    }
    catch (const std::exception&) {
      throw InputError(std::string("bad ") + what + " value '" + tok + "'");
    }
    if (used != tok.size()) throw InputError(std::string("bad ") + what + " value '" + tok + "'");
    v.push_back(x);
  }
  if (v.empty()) throw InputError(std::string("empty ") + what + " list");
  return v;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Whole-life battery arbitrage dispatch simulator", "bessopt"};
  app.require_subcommand(1);

  CommonInputs sim_in;
  std::optional<double> lambda_cyc, lambda_cal;
  bool adaptive = false;
  std::optional<int> window_days;
  std::string sim_out = ".";
  auto* sim = app.add_subcommand("simulate", "simulate one life to end of life");
  add_common(sim, sim_in);
  sim->add_option("--lambda-cyc", lambda_cyc, "cycle aging weight");
  sim->add_option("--lambda-cal", lambda_cal, "calendar aging weight");
  sim->add_flag("--adaptive", adaptive, "estimate lambda online from a moving mean");
  sim->add_option("--window-days", window_days, "moving-mean window of the adaptive estimator");
  sim->add_option("--out-dir", sim_out, "directory for daily_log.csv and summary.json")->capture_default_str();

  CommonInputs sw_in;
  std::string mode = "both", lambdas, rates = "0";
  int threads = 1;
  std::string sw_out = ".";
  auto* sw = app.add_subcommand("sweep", "sweep static lambda weights over whole lives");
  add_common(sw, sw_in);
  sw->add_option("--mode", mode, "cal-only | cyc-only | both | grid2d")->capture_default_str();
  sw->add_option("--lambdas", lambdas, "comma-separated lambda values (default 0.25,0.5,...,64)");
  sw->add_option("--rates", rates, "comma-separated interest rates")->capture_default_str();
  sw->add_option("--threads", threads, "parallel runs")->capture_default_str();
  sw->add_option("--out-dir", sw_out, "directory for sweep.csv and peak.json")->capture_default_str();

  std::uint64_t gen_seed = 7;
  int gen_days = 365;
  int gen_step = 15;
  std::string gen_path = "prices.csv";
  auto* gen = app.add_subcommand("gen-prices", "write a synthetic price series");
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--days", gen_days)->capture_default_str();
  gen->add_option("--step-minutes", gen_step)->capture_default_str();
  gen->add_option("--out", gen_path)->capture_default_str();

  std::string log_path, an_config;
  double rate = 0.0;
  auto* an = app.add_subcommand("analyze", "recompute NPV, PI and aging shares from a daily log");
  an->add_option("--log", log_path, "daily log CSV")->required();
  an->add_option("--rate", rate, "interest rate")->capture_default_str();
  an->add_option("--config", an_config, "configuration supplying the battery cost (pi is 0 without it)");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  }
  catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*sim) {
      auto cfg = load(sim_in);
      if (lambda_cyc) cfg.economic.lambda_cyc = *lambda_cyc;
      if (lambda_cal) cfg.economic.lambda_cal = *lambda_cal;
      if (adaptive) cfg.economic.adaptive.enabled = true;
      if (window_days) cfg.economic.adaptive.window_days = *window_days;
      cfg = validate_config(cfg);
      const auto prices = load_prices(sim_in, cfg);
      const LambdaPolicy policy = cfg.economic.adaptive.enabled
                                      ? LambdaPolicy(AdaptiveLambda{cfg.economic.adaptive.window_days})
                                      : LambdaPolicy(StaticLambda{cfg.economic.lambda_cyc, cfg.economic.lambda_cal});
      const auto life = run_life(cfg, prices, policy);
      const auto summary = format_summary(summarize(life, cfg));
      write_file(fs::path(sim_out) / "daily_log.csv", format_daily_log(life.daily));
      write_file(fs::path(sim_out) / "summary.json", summary);
      out << summary;
      if (life.simultaneity_warnings > 0)
        err << "warning: " << life.simultaneity_warnings << " steps charged and discharged simultaneously\n";
    }
    else if (*sw) {
      const auto cfg = load(sw_in);
      SweepSpec spec;
      try {
        spec.mode = parse_sweep_mode(mode);
      }
      catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (!lambdas.empty()) spec.lambda_values = parse_list(lambdas, "lambda");
      spec.interest_rates = parse_list(rates, "rate");
      spec.threads = threads;
      const auto prices = load_prices(sw_in, cfg);
      std::vector<SweepRow> rows;
      try {
        rows = run_sweep(spec, cfg, prices);
      }
      catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      write_file(fs::path(sw_out) / "sweep.csv", format_sweep(rows));
      const auto peak = format_peak(find_peak(rows, spec.interest_rates.front()), spec.mode);
      write_file(fs::path(sw_out) / "peak.json", peak);
      out << peak;
      for (const auto& r : rows)
        if (!r.ok())
          err << "warning: run lambda_cal=" << r.lambda_cal << " lambda_cyc=" << r.lambda_cyc << " failed: " << r.error
              << "\n";
    }
    else if (*gen) {
      SyntheticParams p;
      p.step_minutes = gen_step;
      if (gen_days < 1) throw InputError("--days must be >= 1");
      try {
        write_prices(generate_synthetic_prices(gen_seed, gen_days, p), gen_path);
      }
      catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
    }
    else if (*an) {
      const double c_battery = an_config.empty() ? 0.0 : load_config(an_config).battery.c_battery;
      if (!(rate >= 0.0)) throw InputError("--rate must be >= 0");
      std::vector<DailyRecord> daily;
      try {
        daily = parse_daily_log(read_file(log_path));
      }
      catch (const InputError&) {
        throw;
      }
      catch (const std::runtime_error& e) {
        throw InputError(e.what());
      }
      out << format_summary(summarize(daily, c_battery, rate));
    }
  }
  catch (const ConfigError& e) {
    err << e.what() << "\n";
    return 1;
  }
  catch (const PriceFormatError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace bess
