#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mnqc::out {

// Filesystem/serialization failures, mapped to their own process exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal representation that round-trips to the same double, so
// repeated runs emit byte-identical artifacts.
std::string format_double(double value);

using CsvCell = std::variant<std::string, double, long long>;
using CsvRow = std::vector<CsvCell>;

std::string format_cell(const CsvCell& cell);

// Writes header + rows with '\n' line endings.  Throws std::runtime_error on
// I/O failure or on a row whose width disagrees with the header.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows);

// Creates the directory (and parents) if needed; throws on failure.
void ensure_directory(const std::string& path);

// Run manifest accompanying every artifact directory:
//   {command, config_echo, seed, outputs[], results, versions, runtime_s}
// `config_echo` is embedded as a JSON object from the serialized config.
class Manifest {
 public:
  Manifest(std::string command, const std::string& config_echo_json, std::uint64_t seed);

  void add_output(const std::string& relative_path, const std::string& description);
  void add_result(const std::string& key, double value);
  void add_result(const std::string& key, const std::string& value);
  void set_runtime_s(double seconds);

  std::string to_json() const;
  // Writes to_json() to `path` and records nothing else; the manifest lists
  // every other artifact of the run.
  void write(const std::string& path) const;

 private:
  std::string command_;
  std::string config_echo_json_;
  std::uint64_t seed_ = 0;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::vector<std::pair<std::string, std::variant<double, std::string>>> results_;
  double runtime_s_ = 0.0;
};

}  // namespace mnqc::out
