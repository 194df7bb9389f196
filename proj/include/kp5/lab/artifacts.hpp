#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace kp5::lab {

/// One row of a CSV table; cells are preformatted.
using CsvRow = std::vector<std::string>;

std::string fmt(double v);  // %.17g, so tables round-trip and stay bit-stable
std::string fmt(long v);
inline std::string fmt(int v) { return fmt(static_cast<long>(v)); }

/// Collects artifacts for one job directory. Every file goes through a temp
/// file + rename; manifest.json is written last and indexes the rest.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::string command, nlohmann::json config, std::uint64_t seed);

  void json(const std::string& name, const nlohmann::json& doc, const std::string& kind = "report");
  void csv(const std::string& name, const CsvRow& header, const std::vector<CsvRow>& rows,
           const std::string& kind = "table");
  void bytes(const std::string& name, const std::string& data, const std::string& kind);
  /// Writes manifest.json with the exit status of the job.
  void finish(int exit_code);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string command_;
  nlohmann::json config_;
  std::uint64_t seed_;
  nlohmann::json entries_ = nlohmann::json::array();
};

}  // namespace kp5::lab
