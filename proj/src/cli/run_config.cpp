#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "szego/cli.hpp"
#include "szego/errors.hpp"

namespace szego::cli {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigInvalid(where + ": unknown key \"" + key + "\"");
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigInvalid(where + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigInvalid(where + "." + key + " must be finite");
  return d;
}

int integer(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigInvalid(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigInvalid(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigInvalid(where + " must be an array of numbers");
    const double d = x.get<double>();
    if (!std::isfinite(d)) throw ConfigInvalid(where + " entries must be finite");
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<double> GridConfig::points() const {
  std::vector<double> xs(n);
  const double h = (xmax - xmin) / (n - 1);
  for (int k = 0; k < n; ++k) xs[k] = k + 1 == n ? xmax : xmin + k * h;
  return xs;
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigInvalid("config: top level must be an object");
  only_keys(j, {"initial", "times", "grid", "disk", "audit", "j_points", "svg"}, "config");

  RunConfig cfg;
  cfg.source = text;
  if (!j.contains("initial")) throw ConfigInvalid("config: missing \"initial\"");
  const PoleSum initial = pole_sum_from_json(j.at("initial").dump());
  try {
    cfg.initial = HardyRational(initial);
  } catch (const NotHardy& e) {
    throw ConfigInvalid(std::string("config.initial: ") + e.what());
  }
  if (!j.contains("times")) throw ConfigInvalid("config: missing \"times\"");
  cfg.times = number_list(j.at("times"), "config.times");

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) throw ConfigInvalid("config.grid must be an object");
    only_keys(g, {"xmin", "xmax", "n", "eta"}, "config.grid");
    cfg.grid.xmin = number(g, "xmin", cfg.grid.xmin, "config.grid");
    cfg.grid.xmax = number(g, "xmax", cfg.grid.xmax, "config.grid");
    cfg.grid.n = integer(g, "n", cfg.grid.n, "config.grid");
    cfg.grid.eta = number(g, "eta", cfg.grid.eta, "config.grid");
  }
  if (!(cfg.grid.xmin < cfg.grid.xmax)) throw ConfigInvalid("config.grid: need xmin < xmax");
  if (cfg.grid.n < 2) throw ConfigInvalid("config.grid: need n >= 2");
  if (cfg.grid.eta < 0.0) throw ConfigInvalid("config.grid: need eta >= 0");

  if (j.contains("disk")) {
    const json& d = j.at("disk");
    if (!d.is_object()) throw ConfigInvalid("config.disk must be an object");
    only_keys(d, {"modes", "dt", "pad"}, "config.disk");
    cfg.disk.modes = integer(d, "modes", cfg.disk.modes, "config.disk");
    cfg.disk.dt = number(d, "dt", cfg.disk.dt, "config.disk");
    cfg.disk.pad = integer(d, "pad", cfg.disk.pad, "config.disk");
  }
  if (cfg.disk.modes < 16) throw ConfigInvalid("config.disk: need modes >= 16");
  if (!(cfg.disk.dt > 0.0)) throw ConfigInvalid("config.disk: need dt > 0");
  if (cfg.disk.pad < 2) throw ConfigInvalid("config.disk: need pad >= 2");

  if (j.contains("audit")) {
    const json& a = j.at("audit");
    if (!a.is_object()) throw ConfigInvalid("config.audit must be an object");
    only_keys(a, {"iterations"}, "config.audit");
    cfg.audit_iterations = integer(a, "iterations", cfg.audit_iterations, "config.audit");
  }
  if (cfg.audit_iterations < 0 || cfg.audit_iterations > kDefaultMaxMultiplicity)
    throw ConfigInvalid("config.audit: iterations must lie in [0, 64]");

  if (j.contains("j_points")) {
    cfg.j_points = number_list(j.at("j_points"), "config.j_points");
    for (double x : cfg.j_points)
      if (x < 0.0) throw ConfigInvalid("config.j_points: entries must be >= 0");
  }
  if (j.contains("svg")) {
    if (!j.at("svg").is_boolean()) throw ConfigInvalid("config.svg must be a boolean");
    cfg.svg = j.at("svg").get<bool>();
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace szego::cli
