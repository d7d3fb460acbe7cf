#include "slelab/manifest.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slelab::io {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["params"] = params;
  j["seed"] = seed;
  j["stream_base"] = stream_base;
  j["chunk_size"] = chunk_size;
  j["workers"] = workers;
  j["code_version"] = code_version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["outputs"] = outputs;
  nlohmann::ordered_json ck = nlohmann::ordered_json::object();
  for (const auto& [name, digest] : checksums) ck[name] = digest;
  j["checksums"] = ck;
  return j;
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& j) {
  RunManifest m;
  m.command = j.value("command", "");
  if (j.contains("params")) m.params = j["params"];
  m.seed = j.value("seed", 0ULL);
  m.stream_base = j.value("stream_base", 0ULL);
  m.chunk_size = j.value("chunk_size", std::size_t{0});
  m.workers = j.value("workers", 1);
  m.code_version = j.value("code_version", "");
  m.started_at = j.value("started_at", "");
  m.finished_at = j.value("finished_at", "");
  if (j.contains("outputs"))
    m.outputs = j["outputs"].get<std::vector<std::string>>();
  if (j.contains("checksums"))
    for (const auto& [k, v] : j["checksums"].items())
      m.checksums.emplace_back(k, v.get<std::string>());
  return m;
}

std::string iso_timestamp_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1a64: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

void write_file_fsync(const std::string& path, const std::string& content) {
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw std::runtime_error("cannot open for writing: " + path);
  std::size_t off = 0;
  while (off < content.size()) {
    ssize_t n = ::write(fd, content.data() + off, content.size() - off);
    if (n < 0) {
      ::close(fd);
      throw std::runtime_error("write failed: " + path);
    }
    off += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

void write_manifest(const RunManifest& m, const std::string& path) {
  write_file_fsync(path, m.to_json().dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  nlohmann::ordered_json j;
  in >> j;
  return RunManifest::from_json(j);
}

std::string CsvTable::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row width mismatch");
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_double(v));
  rows_.push_back(std::move(row));
}

void CsvTable::add_row_mixed(const std::vector<std::string>& values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(values);
}

std::string CsvTable::serialize() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out << columns_[i] << (i + 1 < columns_.size() ? ',' : '\n');
  for (const auto& row : rows_)
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? ',' : '\n');
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  write_file_fsync(path, serialize());
}

CsvTable CsvTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  CsvTable t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (header) {
      t.columns_ = fields;
      header = false;
    } else {
      t.rows_.push_back(fields);
    }
  }
  if (t.columns_.empty()) throw std::runtime_error("CSV has no header: " + path);
  return t;
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::column_as_double(const std::string& name) const {
  int idx = column_index(name);
  if (idx < 0) throw std::invalid_argument("CSV column missing: " + name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(std::stod(row[idx]));
  return out;
}

}  // namespace slelab::io
