#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kp5/lab/artifacts.hpp"
#include "kp5/lab/config.hpp"

namespace kp5::lab {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  nlohmann::json report;
  bool pass() const;
  int exit_code() const { return pass() ? 0 : 1; }
};

const std::vector<std::string>& suite_names();

/// Runs one verification suite and writes its artifacts. samples <= 0 uses
/// the suite default; seeds derive from cfg.seed. ConfigError for an unknown name.
SuiteResult run_suite(const std::string& which, const RunConfig& cfg, int samples, ArtifactWriter& out);

SuiteResult run_simulate(const RunConfig& cfg, ArtifactWriter& out);
SuiteResult run_uniqueness(const RunConfig& cfg, ArtifactWriter& out);
SuiteResult run_scaling(const RunConfig& cfg, ArtifactWriter& out);

/// Same thing, packaged for the acceptance runner.
nlohmann::json checks_json(const std::vector<Check>& checks);

}  // namespace kp5::lab
