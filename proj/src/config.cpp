#include "mnqc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mnqc/benchmarks.hpp"
#include "mnqc/m2o.hpp"

namespace mnqc::cfg {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& message) {
  throw ConfigError(where + ": " + message);
}

double parse_double(const std::string& value, const std::string& where, const std::string& key) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last)
    fail(where, "expected a number for key '" + key + "', got '" + value + "'");
  return out;
}

long long parse_integer(const std::string& value, const std::string& where,
                        const std::string& key) {
  long long out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last)
    fail(where, "expected an integer for key '" + key + "', got '" + value + "'");
  return out;
}

std::uint64_t parse_seed(const std::string& value, const std::string& where,
                         const std::string& key) {
  std::uint64_t out = 0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last)
    fail(where, "expected a non-negative integer for key '" + key + "', got '" + value + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string current;
  std::stringstream stream(value);
  while (std::getline(stream, current, ',')) {
    const std::string item = trim(current);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void set_pump(RunConfig& config, const std::string& value, const std::string& where) {
  if (value == "auto-C1") {
    config.auto_power = true;
    config.pump_watts = 0.0;
    return;
  }
  config.auto_power = false;
  config.pump_watts = parse_double(value, where, "pump");
}

void apply_key(RunConfig& config, const std::string& section, const std::string& key,
               const std::string& value, const std::string& where) {
  if (section == "run") {
    if (key == "seed") config.seed = parse_seed(value, where, key);
    else if (key == "out") config.out_dir = value;
    else if (key == "threads") config.threads = static_cast<int>(parse_integer(value, where, key));
    else if (key == "benchmarks") config.benchmarks = split_list(value);
    else if (key == "analysis") config.analysis = value;
    else fail(where, "unknown key '" + key + "' in section [run]");
  } else if (section == "link") {
    if (key == "preset") config.preset = value;
    else if (key == "pump") set_pump(config, value, where);
    else if (key == "pe") config.pe = parse_double(value, where, key);
    else if (key == "rounds") config.rounds = static_cast<int>(parse_integer(value, where, key));
    else fail(where, "unknown key '" + key + "' in section [link]");
  } else if (section == "noise") {
    if (key == "t1") config.noise.t1 = parse_double(value, where, key);
    else if (key == "t2") config.noise.t2 = parse_double(value, where, key);
    else if (key == "local_gate_time")
      config.noise.local_gate_time = parse_double(value, where, key);
    else if (key == "depolarizing_prob")
      config.noise.depolarizing_prob = parse_double(value, where, key);
    else if (key == "purification_step_time")
      config.noise.purification_step_time = parse_double(value, where, key);
    else fail(where, "unknown key '" + key + "' in section [noise]");
  } else if (section == "grid") {
    if (key == "link_time_min") config.grid.link_time_min = parse_double(value, where, key);
    else if (key == "link_time_max") config.grid.link_time_max = parse_double(value, where, key);
    else if (key == "link_time_points")
      config.grid.link_time_points = static_cast<int>(parse_integer(value, where, key));
    else if (key == "infidelity_min") config.grid.infidelity_min = parse_double(value, where, key);
    else if (key == "infidelity_max") config.grid.infidelity_max = parse_double(value, where, key);
    else if (key == "infidelity_points")
      config.grid.infidelity_points = static_cast<int>(parse_integer(value, where, key));
    else if (key == "threshold") config.grid.threshold = parse_double(value, where, key);
    else fail(where, "unknown key '" + key + "' in section [grid]");
  } else if (section == "qv") {
    if (key == "trials") config.qv_trials = static_cast<int>(parse_integer(value, where, key));
    else if (key == "max_width")
      config.qv_max_width = static_cast<int>(parse_integer(value, where, key));
    else fail(where, "unknown key '" + key + "' in section [qv]");
  } else if (section == "dqpe") {
    if (key == "ancillas")
      config.dqpe_ancillas = static_cast<int>(parse_integer(value, where, key));
    else if (key == "phase") config.dqpe_phase = parse_double(value, where, key);
    else fail(where, "unknown key '" + key + "' in section [dqpe]");
  } else {
    fail(where, "unknown section [" + section + "]");
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  const std::vector<std::string> presets = m2o::preset_names();
  if (std::find(presets.begin(), presets.end(), preset) == presets.end())
    throw ConfigError("unknown preset '" + preset + "'; valid presets: " + join(presets));
  if (!auto_power && !(pump_watts > 0.0))
    throw ConfigError("pump power must be > 0 W (or 'auto-C1')");
  if (pe < 0.0 || pe > 1.0) throw ConfigError("pe must be in [0, 1]");
  if (rounds < 0 || rounds > 16) throw ConfigError("rounds must be in [0, 16]");
  try {
    noise.validate();
  } catch (const std::invalid_argument& error) {
    throw ConfigError(error.what());
  }
  if (benchmarks.empty()) throw ConfigError("benchmark selection must be non-empty");
  for (const std::string& name : benchmarks) {
    try {
      (void)bench::benchmark_from_string(name);
    } catch (const std::invalid_argument&) {
      throw ConfigError("unknown benchmark '" + name +
                        "'; valid benchmarks: ghz, bv, qft, adder, qv");
    }
  }
  if (analysis != "roofline" && analysis != "qcpa" && analysis != "gap" && analysis != "none")
    throw ConfigError("analysis must be one of roofline, qcpa, gap, none");
  if (out_dir.empty()) throw ConfigError("output directory must be non-empty");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (grid.link_time_points < 1 || grid.infidelity_points < 1)
    throw ConfigError("grid axes must have at least one point");
  if (!(grid.link_time_min > 0.0) || grid.link_time_max < grid.link_time_min)
    throw ConfigError("grid link times must satisfy 0 < min <= max");
  if (!(grid.infidelity_min > 0.0) || grid.infidelity_max < grid.infidelity_min ||
      grid.infidelity_max >= 1.0)
    throw ConfigError("grid infidelities must satisfy 0 < min <= max < 1");
  if (!(grid.threshold > 0.0) || grid.threshold >= 1.0)
    throw ConfigError("grid threshold must be in (0, 1)");
  if (qv_trials < 100) throw ConfigError("qv trials must be >= 100 for the pass rule");
  if (qv_max_width < 0) throw ConfigError("qv max_width must be >= 0");
  if (dqpe_ancillas < 1 || dqpe_ancillas > 24)
    throw ConfigError("dqpe ancillas must be in [1, 24]");
  if (!(dqpe_phase > 0.0) || dqpe_phase >= 1.0)
    throw ConfigError("dqpe phase must be in (0, 1) turns");
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
  RunConfig config;
  std::string section;
  std::stringstream stream(text);
  std::string raw;
  int line_number = 0;
  while (std::getline(stream, raw)) {
    ++line_number;
    const std::string where = source_name + ":" + std::to_string(line_number);
    std::string line = raw;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(where, "unterminated section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(where, "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "missing key before '='");
    if (value.empty()) fail(where, "missing value for key '" + key + "'");
    if (section.empty()) fail(where, "key '" + key + "' appears before any [section]");
    apply_key(config, section, key, value, where);
  }
  config.validate();
  return config;
}

RunConfig parse_config_json(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ConfigError(source_name + ": " + error.what());
  }
  if (!doc.is_object()) throw ConfigError(source_name + ": top level must be an object");
  RunConfig config;
  try {
    for (const auto& [section, body] : doc.items()) {
      if (!body.is_object())
        throw ConfigError(source_name + ": section '" + section + "' must be an object");
      for (const auto& [key, value] : body.items()) {
        const std::string where = source_name + " [" + section + "]";
        if (section == "link" && key == "pump") {
          if (value.is_string()) set_pump(config, value.get<std::string>(), where);
          else if (value.is_number()) set_pump(config, std::to_string(value.get<double>()), where);
          else fail(where, "pump must be a number or \"auto-C1\"");
        } else if (section == "run" && key == "benchmarks") {
          if (!value.is_array()) fail(where, "benchmarks must be an array of strings");
          config.benchmarks.clear();
          for (const auto& item : value) config.benchmarks.push_back(item.get<std::string>());
        } else if (value.is_string()) {
          apply_key(config, section, key, value.get<std::string>(), where);
        } else if (value.is_number_integer()) {
          apply_key(config, section, key, std::to_string(value.get<long long>()), where);
        } else if (value.is_number()) {
          std::ostringstream formatted;
          formatted.precision(17);
          formatted << value.get<double>();
          apply_key(config, section, key, formatted.str(), where);
        } else {
          fail(where, "unsupported value type for key '" + key + "'");
        }
      }
    }
  } catch (const json::exception& error) {
    throw ConfigError(source_name + ": " + error.what());
  }
  config.validate();
  return config;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << stream.rdbuf();
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return is_json ? parse_config_json(buffer.str(), path) : parse_config_text(buffer.str(), path);
}

std::string config_to_json(const RunConfig& config) {
  json doc;
  doc["run"] = {{"seed", config.seed},
                {"out", config.out_dir},
                {"threads", config.threads},
                {"benchmarks", config.benchmarks},
                {"analysis", config.analysis}};
  if (config.auto_power) {
    doc["link"] = {{"preset", config.preset}, {"pump", "auto-C1"}, {"pe", config.pe},
                   {"rounds", config.rounds}};
  } else {
    doc["link"] = {{"preset", config.preset}, {"pump", config.pump_watts}, {"pe", config.pe},
                   {"rounds", config.rounds}};
  }
  doc["noise"] = {{"t1", config.noise.t1},
                  {"t2", config.noise.t2},
                  {"local_gate_time", config.noise.local_gate_time},
                  {"depolarizing_prob", config.noise.depolarizing_prob},
                  {"purification_step_time", config.noise.purification_step_time}};
  doc["grid"] = {{"link_time_min", config.grid.link_time_min},
                 {"link_time_max", config.grid.link_time_max},
                 {"link_time_points", config.grid.link_time_points},
                 {"infidelity_min", config.grid.infidelity_min},
                 {"infidelity_max", config.grid.infidelity_max},
                 {"infidelity_points", config.grid.infidelity_points},
                 {"threshold", config.grid.threshold}};
  doc["qv"] = {{"trials", config.qv_trials}, {"max_width", config.qv_max_width}};
  doc["dqpe"] = {{"ancillas", config.dqpe_ancillas}, {"phase", config.dqpe_phase}};
  return doc.dump(2);
}

}  // namespace mnqc::cfg
