// kp5 command-line front end: simulate / verify / uniqueness / scaling-test
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kp5/errors.hpp"
#include "kp5/lab/artifacts.hpp"
#include "kp5/lab/config.hpp"
#include "kp5/lab/suites.hpp"

namespace fs = std::filesystem;
using namespace kp5;

namespace {

struct Job {
  std::string command;
  std::string config_path;
  std::string out;
  std::string suite;
  int samples = 0;
  std::optional<std::uint64_t> seed;
};

lab::RunConfig resolve(const Job& job) {
  lab::RunConfig cfg = job.config_path.empty() ? lab::parse_run_config(nlohmann::json::object())
                                               : lab::load_run_config(job.config_path);
  if (job.seed) cfg.seed = *job.seed;
  return cfg;
}

void summary(const lab::SuiteResult& r) {
  for (const auto& c : r.checks)
    std::printf("%-4s %s: %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.detail.c_str());
  std::printf("%s: %s\n", r.name.c_str(), r.pass() ? "pass" : "fail");
}

int run(const Job& job) {
  lab::RunConfig cfg;
  try {
    cfg = resolve(job);  // validated before anything touches the output directory
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  if (!job.suite.empty()) {
    const auto& names = lab::suite_names();
    if (std::find(names.begin(), names.end(), job.suite) == names.end()) {
      std::fprintf(stderr, "config error: unknown suite '%s'\n", job.suite.c_str());
      return 2;
    }
  }

  const std::string command = job.suite.empty() ? job.command : job.command + " " + job.suite;
  lab::ArtifactWriter out(job.out, command, lab::to_json(cfg), cfg.seed);
  int code = 1;
  try {
    lab::SuiteResult r;
    if (job.command == "simulate")
      r = lab::run_simulate(cfg, out);
    else if (job.command == "uniqueness")
      r = lab::run_uniqueness(cfg, out);
    else if (job.command == "scaling-test")
      r = lab::run_scaling(cfg, out);
    else
      r = lab::run_suite(job.suite, cfg, job.samples > 0 ? job.samples : cfg.samples, out);
    summary(r);
    code = r.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    out.json("error.json", {{"error", e.what()}, {"command", command}}, "error");
    code = 1;
  }
  out.finish(code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"5th-order KP spectral lab"};
  app.require_subcommand(1);
  Job job;

  auto* sim = app.add_subcommand("simulate", "evolve the configured initial data");
  sim->add_option("--config", job.config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", job.out, "output directory")->required();

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", job.suite, "resonance|commutator|acceptability|decay|strichartz|partition|energy_identity")
      ->required();
  ver->add_option("--samples", job.samples, "sample count (config, then suite default)")->check(CLI::NonNegativeNumber);
  ver->add_option("--config", job.config_path, "run config (JSON)")->check(CLI::ExistingFile);
  ver->add_option("--out", job.out, "output directory")->required();

  auto* uni = app.add_subcommand("uniqueness", "two-scheme difference experiment");
  uni->add_option("--config", job.config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
  uni->add_option("--out", job.out, "output directory")->required();

  auto* sca = app.add_subcommand("scaling-test", "dilation bookkeeping and flow commutation");
  sca->add_option("--config", job.config_path, "run config (JSON)")->required()->check(CLI::ExistingFile);
  sca->add_option("--out", job.out, "output directory")->required();

  for (auto* s : {sim, ver, uni, sca}) {
    s->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { job.seed = v; }, "master seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
  }
  for (auto* s : {sim, ver, uni, sca})
    if (s->parsed()) job.command = s->get_name();
  return run(job);
}
