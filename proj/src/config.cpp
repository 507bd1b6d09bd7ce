#include "mmbh/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "mmbh/error.hpp"
#include "mmbh/units.hpp"

namespace mmbh {

std::string to_string(SweepVar v) {
  switch (v) {
    case SweepVar::none: return "none";
    case SweepVar::sigma: return "sigma";
    case SweepVar::load: return "load";
    case SweepVar::area_side: return "area_side";
    case SweepVar::max_power_dbm: return "max_power_dbm";
    case SweepVar::flow_count: return "flow_count";
  }
  return "none";
}

SweepVar sweep_var_from_string(const std::string& s) {
  for (SweepVar v : {SweepVar::none, SweepVar::sigma, SweepVar::load, SweepVar::area_side,
                     SweepVar::max_power_dbm, SweepVar::flow_count}) {
    if (s == to_string(v)) return v;
  }
  if (s == "pt" || s == "max_power") return SweepVar::max_power_dbm;
  throw ConfigError(fmt::format("unknown sweep variable '{}'", s));
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double to_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", what, text));
  }
  return v;
}

long long to_integer(const std::string& text, const std::string& what) {
  const double v = to_double(text, what);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", what, text));
  }
  return static_cast<long long>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Sweep parse_sweep(const std::string& text) {
  Sweep s;
  const std::string t = trim(text);
  if (t.empty() || t == "none") return s;
  const auto colon = t.find(':');
  if (colon == std::string::npos) {
    throw ConfigError(fmt::format("sweep '{}' must look like var:v1,v2,...", text));
  }
  s.var = sweep_var_from_string(trim(t.substr(0, colon)));
  for (const auto& v : split(t.substr(colon + 1), ',')) s.values.push_back(to_double(v, "sweep"));
  if (s.var != SweepVar::none && s.values.empty()) throw ConfigError("sweep has no values");
  return s;
}

std::vector<Scheme> parse_schemes(const std::string& text) {
  std::vector<Scheme> out;
  for (const auto& name : split(text, ',')) {
    Scheme s;
    try {
      s = scheme_from_string(name);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    if (s == Scheme::oracle) throw ConfigError("the oracle is run through the gap command");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("no schemes selected");
  return out;
}

std::pair<double, double> ExperimentConfig::demand_interval() const {
  if (traffic == TrafficMode::B) return {2.5e9, 3.5e9};
  const double lo = 0.5e9 * load_level;
  return {lo, lo + 1e9};
}

void ExperimentConfig::validate() const {
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(area_side_m > 0.0 && std::isfinite(area_side_m), "area_side_m must be positive");
  check(node_count >= 2, "node_count must be at least 2");
  check(flow_count >= 1, "flow_count must be at least 1");
  check(flow_count <= node_count * (node_count - 1),
        fmt::format("flow_count {} exceeds the {} distinct ordered node pairs", flow_count,
                    node_count * (node_count - 1)));
  if (traffic == TrafficMode::A) {
    check(load_level >= 1 && load_level <= 5, "load_level must be in 1..5");
  } else {
    check(flow_count >= 6 && flow_count <= 10, "traffic mode B needs flow_count in 6..10");
  }
  check(trials >= 1, "trials must be at least 1");
  check(!schemes.empty(), "no schemes selected");
  for (double v : sweep.values) {
    ExperimentConfig probe = *this;
    probe.sweep = {};
    probe.at(sweep.var, v).validate();
  }
}

ExperimentConfig ExperimentConfig::at(SweepVar var, double value) const {
  ExperimentConfig c = *this;
  auto whole = [&](const char* name) {
    if (value != std::floor(value)) throw ConfigError(fmt::format("{} sweep needs integers", name));
    return static_cast<int>(value);
  };
  switch (var) {
    case SweepVar::none: break;
    case SweepVar::sigma: c.params.sigma = value; break;
    case SweepVar::load: c.load_level = whole("load"); break;
    case SweepVar::area_side: c.area_side_m = value; break;
    case SweepVar::max_power_dbm: c.params.max_power_w = dbm_to_watts(value); break;
    case SweepVar::flow_count: c.flow_count = whole("flow_count"); break;
  }
  return c;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  bool k0_friis = false;
  bool k0_set = false;
  std::map<std::string, int> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("line {}: expected key = value", lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const std::string where = fmt::format("line {} ({})", lineno, key);
    if (seen.count(key)) {
      throw ConfigError(fmt::format("{}: duplicate of line {}", where, seen[key]));
    }
    seen[key] = lineno;
    auto num = [&] { return to_double(val, where); };
    auto integer = [&] { return to_integer(val, where); };

    if (key == "bandwidth_mhz") cfg.params.bandwidth_hz = num() * 1e6;
    else if (key == "noise_dbm_per_mhz") cfg.params.noise_psd_w_per_hz = dbm_per_mhz_to_watts_per_hz(num());
    else if (key == "pathloss_exponent") cfg.params.pathloss_exponent = num();
    else if (key == "max_power_dbm") cfg.params.max_power_w = dbm_to_watts(num());
    else if (key == "mui_factor") cfg.params.mui_factor = num();
    else if (key == "cta_duration_us") cfg.params.cta_duration_s = num() * 1e-6;
    else if (key == "cta_count") cfg.params.cta_count = static_cast<int>(integer());
    else if (key == "beamwidth_3db_deg") cfg.params.beamwidth_3db_deg = num();
    else if (key == "sigma") cfg.params.sigma = num();
    else if (key == "efficiency") cfg.params.efficiency = num();
    else if (key == "carrier_ghz") cfg.params.carrier_wavelength_m = kSpeedOfLight / (num() * 1e9);
    else if (key == "k0") {
      k0_set = true;
      k0_friis = val == "friis";
      if (!k0_friis) cfg.params.k0 = num();
    }
    else if (key == "area_side_m") cfg.area_side_m = num();
    else if (key == "node_count") cfg.node_count = static_cast<int>(integer());
    else if (key == "traffic_mode") {
      if (val == "A" || val == "a") cfg.traffic = TrafficMode::A;
      else if (val == "B" || val == "b") cfg.traffic = TrafficMode::B;
      else throw ConfigError(fmt::format("{}: expected A or B", where));
    }
    else if (key == "load_level") cfg.load_level = static_cast<int>(integer());
    else if (key == "flow_count") cfg.flow_count = static_cast<int>(integer());
    else if (key == "schemes") cfg.schemes = parse_schemes(val);
    else if (key == "sweep") cfg.sweep = parse_sweep(val);
    else if (key == "trials") cfg.trials = static_cast<int>(integer());
    else if (key == "base_seed") {
      const long long s = integer();
      if (s < 0) throw ConfigError(fmt::format("{}: seed must be non-negative", where));
      cfg.base_seed = static_cast<std::uint64_t>(s);
    }
    else if (key == "reference") {
      try {
        cfg.reference = reference_from_string(val);
      } catch (const DomainError& e) {
        throw ConfigError(fmt::format("{}: {}", where, e.what()));
      }
    }
    else throw ConfigError(fmt::format("{}: unknown key", where));
  }
  if (k0_set && k0_friis) cfg.params.k0 = friis_k0(cfg.params.carrier_wavelength_m);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  return parse_config(in);
}

std::string to_text(const ExperimentConfig& cfg) {
  const SystemParams& p = cfg.params;
  std::string s;
  auto put = [&](const char* key, const std::string& value) {
    s += fmt::format("{} = {}\n", key, value);
  };
  auto g = [](double v) { return fmt::format("{:.17g}", v); };
  put("bandwidth_mhz", g(p.bandwidth_hz / 1e6));
  put("noise_dbm_per_mhz", g(watts_per_hz_to_dbm_per_mhz(p.noise_psd_w_per_hz)));
  put("pathloss_exponent", g(p.pathloss_exponent));
  put("max_power_dbm", g(watts_to_dbm(p.max_power_w)));
  put("mui_factor", g(p.mui_factor));
  put("cta_duration_us", g(p.cta_duration_s * 1e6));
  put("cta_count", std::to_string(p.cta_count));
  put("beamwidth_3db_deg", g(p.beamwidth_3db_deg));
  put("sigma", g(p.sigma));
  put("efficiency", g(p.efficiency));
  put("carrier_ghz", g(kSpeedOfLight / p.carrier_wavelength_m / 1e9));
  put("k0", g(p.k0));
  put("area_side_m", g(cfg.area_side_m));
  put("node_count", std::to_string(cfg.node_count));
  put("traffic_mode", cfg.traffic == TrafficMode::A ? "A" : "B");
  put("load_level", std::to_string(cfg.load_level));
  put("flow_count", std::to_string(cfg.flow_count));
  std::string schemes;
  for (Scheme sc : cfg.schemes) schemes += (schemes.empty() ? "" : ",") + to_string(sc);
  put("schemes", schemes);
  if (cfg.sweep.var != SweepVar::none) {
    std::string values;
    for (double v : cfg.sweep.values) values += (values.empty() ? "" : ",") + g(v);
    put("sweep", to_string(cfg.sweep.var) + ":" + values);
  }
  put("trials", std::to_string(cfg.trials));
  put("base_seed", std::to_string(cfg.base_seed));
  put("reference", to_string(cfg.reference));
  return s;
}

}  // namespace mmbh
