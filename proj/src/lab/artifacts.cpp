#include "kp5/lab/artifacts.hpp"

#include <cstdio>

#include "kp5/field_io.hpp"
#include "kp5/lab/config.hpp"

namespace kp5::lab {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(long v) { return std::to_string(v); }

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, std::string command, nlohmann::json config,
                               std::uint64_t seed)
    : dir_(std::move(dir)), command_(std::move(command)), config_(std::move(config)), seed_(seed) {
  std::filesystem::create_directories(dir_);
}

void ArtifactWriter::bytes(const std::string& name, const std::string& data, const std::string& kind) {
  write_file_atomic(dir_ / name, data);
  entries_.push_back({{"file", name}, {"kind", kind}, {"bytes", data.size()}});
}

void ArtifactWriter::json(const std::string& name, const nlohmann::json& doc, const std::string& kind) {
  bytes(name, doc.dump(2) + "\n", kind);
}

void ArtifactWriter::csv(const std::string& name, const CsvRow& header, const std::vector<CsvRow>& rows,
                         const std::string& kind) {
  std::string out;
  auto line = [&](const CsvRow& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  bytes(name, out, kind);
}

void ArtifactWriter::finish(int exit_code) {
  // no timestamps: identical runs must give identical manifests
  const nlohmann::json m = {{"format", "kp5-manifest"},
                            {"version", 1},
                            {"command", command_},
                            {"config_hash", config_hash(config_)},
                            {"config", config_},
                            {"seed", seed_},
                            {"exit_code", exit_code},
                            {"artifacts", entries_}};
  write_file_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
}

}  // namespace kp5::lab
