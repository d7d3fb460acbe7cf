#ifndef SLELAB_MANIFEST_HPP
#define SLELAB_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace slelab::io {

inline constexpr const char* kCodeVersion = "slelab 0.1.0";

/**
 * Record of one experiment run: command, full parameter set, seed layout,
 * timestamps, output files and their checksums. Field order in the JSON is
 * fixed; timestamps are the only non-reproducible fields.
 */
struct RunManifest {
  std::string command;
  nlohmann::ordered_json params;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  std::size_t chunk_size = 0;
  int workers = 1;
  std::string code_version = kCodeVersion;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, std::string>> checksums;

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& j);
};

std::string iso_timestamp_now();

/// FNV-1a 64-bit digest of a file, hex-encoded.
std::string fnv1a64_file(const std::string& path);

/// Write content and fsync before returning.
void write_file_fsync(const std::string& path, const std::string& content);

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

/// RFC-4180-style CSV: header row, '.' decimal separator, %.17g doubles.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& values);
  void add_row_mixed(const std::vector<std::string>& values);
  std::string serialize() const;
  void write(const std::string& path) const;  // fsynced

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  static std::string format_double(double v);
  static CsvTable parse_file(const std::string& path);
  int column_index(const std::string& name) const;  // -1 if absent
  std::vector<double> column_as_double(const std::string& name) const;

 private:
  CsvTable() = default;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace slelab::io

#endif
