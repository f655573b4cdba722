/*
 * config_io.cpp
 */

#include "bess/config_io.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace bess {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Reader {
public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  /// Visits an object section, complaining about keys not in `known`.
  bool section(const json& parent, const char* name, std::initializer_list<const char*> known,
               const json*& out)
  {
    out = nullptr;
    if (!parent.contains(name)) return false;
    const json& node = parent.at(name);
    if (!node.is_object()) {
      errors_.push_back(std::string(name) + ": expected an object");
      return false;
    }
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, value] : node.items())
      if (!allowed.count(key)) errors_.push_back(std::string(name) + ": unknown key '" + key + "'");
    out = &node;
    return true;
  }

  void number(const json& obj, const std::string& where, const char* key, double& dst)
  {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      errors_.push_back(where + "." + key + ": expected a number");
      return;
    }
    dst = v.get<double>();
  }

  void integer(const json& obj, const std::string& where, const char* key, int& dst)
  {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      errors_.push_back(where + "." + key + ": expected an integer");
      return;
    }
    dst = v.get<int>();
  }

  void boolean(const json& obj, const std::string& where, const char* key, bool& dst)
  {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) {
      errors_.push_back(where + "." + key + ": expected true/false");
      return;
    }
    dst = v.get<bool>();
  }

  /// Array of fixed-width numeric tuples.
  std::vector<std::vector<double>> tuples(const json& obj, const std::string& where, const char* key,
                                          std::size_t width, bool& present)
  {
    present = obj.contains(key);
    std::vector<std::vector<double>> rows;
    if (!present) return rows;
    const auto& arr = obj.at(key);
    if (!arr.is_array()) {
      errors_.push_back(where + "." + key + ": expected an array");
      return rows;
    }
    for (const auto& item : arr) {
      if (!item.is_array() || item.size() != width ||
          !std::all_of(item.begin(), item.end(), [](const json& v) { return v.is_number(); })) {
        errors_.push_back(where + "." + key + ": each entry must be " + std::to_string(width) + " numbers");
        continue;
      }
      std::vector<double> row;
      for (const auto& v : item)
        row.push_back(v.get<double>());
      rows.push_back(std::move(row));
    }
    return rows;
  }

private:
  std::vector<std::string>& errors_;
};

}  // namespace

Config parse_config(std::string_view text)
{
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error& e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});

  std::vector<std::string> errors;
  for (const auto& [key, value] : doc.items())
    if (key != "battery" && key != "thermal" && key != "aging" && key != "economic" && key != "horizon")
      errors.push_back("unknown section '" + key + "'");

  Config cfg;
  Reader rd(errors);
  const json* node = nullptr;

  if (rd.section(doc, "battery",
                 {"e_nom", "c_rate_max_chg", "c_rate_max_dis", "eta_chg", "eta_dis", "c_battery", "q_eol",
                  "soh_initial", "initial_soc"},
                 node)) {
    auto& b = cfg.battery;
    rd.number(*node, "battery", "e_nom", b.e_nom);
    rd.number(*node, "battery", "c_rate_max_chg", b.c_rate_max_chg);
    rd.number(*node, "battery", "c_rate_max_dis", b.c_rate_max_dis);
    rd.number(*node, "battery", "eta_chg", b.eta_chg);
    rd.number(*node, "battery", "eta_dis", b.eta_dis);
    rd.number(*node, "battery", "c_battery", b.c_battery);
    rd.number(*node, "battery", "q_eol", b.q_eol);
    rd.number(*node, "battery", "soh_initial", b.soh_initial);
    rd.number(*node, "battery", "initial_soc", b.initial_soc);
  }
  if (rd.section(doc, "thermal", {"k_t", "alpha_t", "beta_chg", "beta_dis", "t_amb", "t_initial"}, node)) {
    auto& t = cfg.thermal;
    rd.number(*node, "thermal", "k_t", t.k_t);
    rd.number(*node, "thermal", "alpha_t", t.alpha_t);
    rd.number(*node, "thermal", "beta_chg", t.beta_chg);
    rd.number(*node, "thermal", "beta_dis", t.beta_dis);
    rd.number(*node, "thermal", "t_amb", t.t_amb);
    rd.number(*node, "thermal", "t_initial", t.t_initial);
  }
  if (rd.section(doc, "aging", {"k_cyc_dis", "cyc_chg_planes", "cal_planes", "discharge_throughput_only"},
                 node)) {
    auto& a = cfg.aging;
    rd.number(*node, "aging", "k_cyc_dis", a.k_cyc_dis);
    rd.boolean(*node, "aging", "discharge_throughput_only", a.discharge_throughput_only);
    bool present = false;
    auto cyc = rd.tuples(*node, "aging", "cyc_chg_planes", 2, present);
    if (present) {
      a.cyc_chg_planes.clear();
      for (const auto& r : cyc)
        a.cyc_chg_planes.push_back({r[0], r[1]});
    }
    auto cal = rd.tuples(*node, "aging", "cal_planes", 3, present);
    if (present) {
      a.cal_planes.clear();
      for (const auto& r : cal)
        a.cal_planes.push_back({r[0], r[1], r[2]});
    }
  }
  if (rd.section(doc, "economic", {"lambda_cyc", "lambda_cal", "interest_rate", "adaptive"}, node)) {
    auto& e = cfg.economic;
    rd.number(*node, "economic", "lambda_cyc", e.lambda_cyc);
    rd.number(*node, "economic", "lambda_cal", e.lambda_cal);
    rd.number(*node, "economic", "interest_rate", e.interest_rate);
    const json* adaptive = nullptr;
    if (rd.section(*node, "adaptive", {"enabled", "window_days"}, adaptive)) {
      rd.boolean(*adaptive, "economic.adaptive", "enabled", e.adaptive.enabled);
      rd.integer(*adaptive, "economic.adaptive", "window_days", e.adaptive.window_days);
    }
  }
  if (rd.section(doc, "horizon", {"dt_hours", "window_days", "commit_days"}, node)) {
    auto& h = cfg.horizon;
    rd.number(*node, "horizon", "dt_hours", h.dt_hours);
    rd.integer(*node, "horizon", "window_days", h.window_days);
    rd.integer(*node, "horizon", "commit_days", h.commit_days);
  }

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

std::string serialize_config(const Config& cfg)
{
  ordered_json doc;
  const auto& b = cfg.battery;
  doc["battery"] = ordered_json{{"e_nom", b.e_nom},
                                {"c_rate_max_chg", b.c_rate_max_chg},
                                {"c_rate_max_dis", b.c_rate_max_dis},
                                {"eta_chg", b.eta_chg},
                                {"eta_dis", b.eta_dis},
                                {"c_battery", b.c_battery},
                                {"q_eol", b.q_eol},
                                {"soh_initial", b.soh_initial},
                                {"initial_soc", b.initial_soc}};
  const auto& t = cfg.thermal;
  doc["thermal"] = ordered_json{{"k_t", t.k_t},           {"alpha_t", t.alpha_t}, {"beta_chg", t.beta_chg},
                                {"beta_dis", t.beta_dis}, {"t_amb", t.t_amb},     {"t_initial", t.t_initial}};
  const auto& a = cfg.aging;
  ordered_json cyc = ordered_json::array();
  for (const auto& p : a.cyc_chg_planes)
    cyc.push_back({p.a, p.b});
  ordered_json cal = ordered_json::array();
  for (const auto& p : a.cal_planes)
    cal.push_back({p.a, p.b, p.c});
  doc["aging"] = ordered_json{{"k_cyc_dis", a.k_cyc_dis},
                              {"cyc_chg_planes", cyc},
                              {"cal_planes", cal},
                              {"discharge_throughput_only", a.discharge_throughput_only}};
  const auto& e = cfg.economic;
  doc["economic"] = ordered_json{
      {"lambda_cyc", e.lambda_cyc},
      {"lambda_cal", e.lambda_cal},
      {"interest_rate", e.interest_rate},
      {"adaptive", ordered_json{{"enabled", e.adaptive.enabled}, {"window_days", e.adaptive.window_days}}}};
  const auto& h = cfg.horizon;
  doc["horizon"] = ordered_json{
      {"dt_hours", h.dt_hours}, {"window_days", h.window_days}, {"commit_days", h.commit_days}};
  return doc.dump(2) + "\n";
}

Config load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open configuration file " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return validate_config(parse_config(ss.str()));
}

}  // namespace bess
