#include "mnqc/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace mnqc::out {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string format_cell(const CsvCell& cell) {
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
  return std::to_string(std::get<long long>(cell));
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows) {
  if (header.empty()) throw IoError("write_csv: header must be non-empty");
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoError("write_csv: cannot open '" + path + "'");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) stream << ',';
    stream << header[i];
  }
  stream << '\n';
  for (const CsvRow& row : rows) {
    if (row.size() != header.size())
      throw IoError("write_csv: row width mismatch in '" + path + "'");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) stream << ',';
      stream << format_cell(row[i]);
    }
    stream << '\n';
  }
  if (!stream.flush()) throw IoError("write_csv: failed writing '" + path + "'");
}

void ensure_directory(const std::string& path) {
  std::error_code code;
  std::filesystem::create_directories(path, code);
  if (code)
    throw IoError("cannot create directory '" + path + "': " + code.message());
}

Manifest::Manifest(std::string command, const std::string& config_echo_json, std::uint64_t seed)
    : command_(std::move(command)), config_echo_json_(config_echo_json), seed_(seed) {}

void Manifest::add_output(const std::string& relative_path, const std::string& description) {
  outputs_.emplace_back(relative_path, description);
}

void Manifest::add_result(const std::string& key, double value) {
  results_.emplace_back(key, value);
}

void Manifest::add_result(const std::string& key, const std::string& value) {
  results_.emplace_back(key, value);
}

void Manifest::set_runtime_s(double seconds) { runtime_s_ = seconds; }

std::string Manifest::to_json() const {
  nlohmann::json doc;
  doc["command"] = command_;
  doc["config_echo"] = nlohmann::json::parse(config_echo_json_);
  doc["seed"] = seed_;
  doc["outputs"] = nlohmann::json::array();
  for (const auto& [path, description] : outputs_)
    doc["outputs"].push_back({{"path", path}, {"description", description}});
  doc["results"] = nlohmann::json::object();
  for (const auto& [key, value] : results_) {
    if (std::holds_alternative<double>(value)) doc["results"][key] = std::get<double>(value);
    else doc["results"][key] = std::get<std::string>(value);
  }
  doc["versions"] = {{"artifact", "1.0.0"}};
  doc["runtime_s"] = runtime_s_;
  return doc.dump(2) + "\n";
}

void Manifest::write(const std::string& path) const {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoError("manifest: cannot open '" + path + "'");
  stream << to_json();
  if (!stream.flush()) throw IoError("manifest: failed writing '" + path + "'");
}

}  // namespace mnqc::out
