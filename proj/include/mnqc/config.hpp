#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mnqc/noise.hpp"

namespace mnqc::cfg {

// Raised for unreadable files, grammar problems (with a line number for the
// text format), unknown keys/sections, and failed semantic validation.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Log-spaced (link time x link infidelity) scan window for GAP analyses.
struct GridSpec {
  double link_time_min = 1e-7;
  double link_time_max = 1e-2;
  int link_time_points = 10;
  double infidelity_min = 1e-4;
  double infidelity_max = 0.5;
  int infidelity_points = 10;
  double threshold = 0.9;
};

// Full run description shared by every subcommand.  The text format is a
// sectioned key = value file; see parse_config_text for the key list.
struct RunConfig {
  // [link] physical layer and distillation
  std::string preset = "no1";
  bool auto_power = true;   // pump power solved so that C = 1 ("auto-C1")
  double pump_watts = 0.0;  // used when auto_power is false
  double pe = 0.5;          // qubit-mode excitation probability
  int rounds = 0;           // nested distillation rounds

  // [noise] data-plane and distillation noise
  NoiseParams noise;

  // [run] orchestration
  std::vector<std::string> benchmarks = {"ghz", "bv", "qft", "adder"};
  std::string analysis = "roofline";  // pipeline tail: roofline | qcpa | gap | none
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;

  // [grid] GAP scan window
  GridSpec grid;

  // [qv] quantum-volume scan
  int qv_trials = 100;
  int qv_max_width = 0;  // 0: scan up to the device width

  // [dqpe] phase-estimation study
  int dqpe_ancillas = 4;
  double dqpe_phase = 337.0 / 512.0;

  // Checks ranges and cross-references (preset names, benchmark names).
  void validate() const;
};

// Reads a config file and dispatches on the extension: ".json" is parsed as
// JSON, anything else as the sectioned text format.  The result is validated.
RunConfig parse_config(const std::string& path);

// Parses the sectioned key = value text format.  Sections and keys:
//   [run]   seed, out, threads, benchmarks (comma list), analysis
//   [link]  preset, pump ("auto-C1" or watts), pe, rounds
//   [noise] t1, t2, local_gate_time, depolarizing_prob, purification_step_time
//   [grid]  link_time_min, link_time_max, link_time_points,
//           infidelity_min, infidelity_max, infidelity_points, threshold
//   [qv]    trials, max_width
//   [dqpe]  ancillas, phase
// '#' or ';' starts a comment.  Errors carry source_name:line.
RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name = "<config>");

// JSON alternative: one object with the sections above as nested objects;
// "pump" accepts the string "auto-C1" or a number.
RunConfig parse_config_json(const std::string& text,
                            const std::string& source_name = "<config>");

// Serializes the effective config as a JSON object (used as the manifest's
// config_echo, and itself parseable by parse_config_json).
std::string config_to_json(const RunConfig& config);

}  // namespace mnqc::cfg
