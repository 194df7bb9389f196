#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "kp5/evolution.hpp"
#include "kp5/random_fields.hpp"
#include "kp5/strichartz.hpp"

namespace kp5::lab {

struct GridConfig {
  double Lx = 16 * 3.141592653589793;
  double Ly = 16 * 3.141592653589793;
  int nx = 128;
  int ny = 128;
};

struct InitConfig {
  std::string kind = "gaussian";  // gaussian | soliton | modes
  std::uint64_t seed = 7;
  double amplitude = 0.1;
  Band band{1.0, 1.0};
  double width = 2.0;       // soliton
  double modulation = 0.0;  // soliton
  std::vector<Mode> modes;  // modes
};

struct SchemeConfig {
  double dt = 0.0;
  double dealias = 2.0 / 3.0;
};

struct UniquenessConfig {
  SchemeConfig a{0.005, 2.0 / 3.0};
  SchemeConfig b{0.0025, 2.0 / 3.0};
  int levels = 3;  // both dt halved per level
  std::vector<double> sobolev{0.0, 0.25, 0.5};
  double record_dt = 0.005;
};

struct ScalingConfig {
  std::vector<double> norms{0.0};
  std::vector<double> epsilon{0.25, 0.125, 0.0625};
  double lambda = 2.0;
  double T = 0.05;  // flow-commutation horizon
};

struct StrichartzConfig {
  ProbeGeometry geometry;
  double horizon = kSaturatedHorizon;  // unit-shell time; shell N runs to horizon / N^5
};

struct RunConfig {
  ModelParams params;
  GridConfig grid;
  InitConfig init;
  std::uint64_t seed = 42;
  int samples = 0;  // 0: suite default
  UniquenessConfig uniqueness;
  ScalingConfig scaling;
  StrichartzConfig strichartz;
  nlohmann::json source;  // the validated document, defaults filled in
};

/// Validate a JSON document against the run schema: unknown keys, wrong
/// types and out-of-range values all raise ConfigError before any work.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
/// Canonical form of every setting that affects results.
nlohmann::json to_json(const RunConfig& cfg);
/// FNV-1a over the canonical dump, hex.
std::string config_hash(const nlohmann::json& doc);

Grid2D make_grid(const GridConfig& g);
Field2D make_initial_data(const RunConfig& cfg);

}  // namespace kp5::lab
