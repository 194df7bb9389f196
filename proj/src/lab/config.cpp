#include "kp5/lab/config.hpp"

#include <climits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "kp5/errors.hpp"

namespace kp5::lab {
namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

double number(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  // lengths may be written as "16pi"
  if (v.is_string()) {
    static const std::regex re(R"(^\s*([0-9]*\.?[0-9]+)?\s*pi\s*$)");
    std::smatch m;
    const std::string s = v.get<std::string>();
    if (std::regex_match(s, m, re)) return (m[1].matched ? std::stod(m[1]) : 1.0) * 3.141592653589793;
  }
  throw ConfigError(where + ": expected a number");
}

double positive(const json& v, const std::string& where) {
  const double x = number(v, where);
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(where + ": must be a positive number");
  return x;
}

long integer(const json& v, const std::string& where, long lo, long hi) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(where + ": expected an integer");
  const long x = v.get<long>();
  if (x < lo || x > hi) throw ConfigError(where + ": out of range");
  return x;
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a non-empty array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(number(e, where));
  return out;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void read_grid(const json& j, GridConfig& g) {
  only_keys(j, {"Lx", "Ly", "nx", "ny"}, "grid");
  if (j.contains("Lx")) g.Lx = positive(j["Lx"], "grid.Lx");
  if (j.contains("Ly")) g.Ly = positive(j["Ly"], "grid.Ly");
  if (j.contains("nx")) g.nx = static_cast<int>(integer(j["nx"], "grid.nx", 4, 1 << 16));
  if (j.contains("ny")) g.ny = static_cast<int>(integer(j["ny"], "grid.ny", 4, 1 << 16));
  if (!power_of_two(g.nx) || !power_of_two(g.ny)) throw ConfigError("grid: nx and ny must be powers of two");
}

void read_band(const json& j, Band& b) {
  if (j.is_array() && j.size() == 2) {
    b = Band{positive(j[0], "init.band"), positive(j[1], "init.band")};
    return;
  }
  only_keys(j, {"kx", "ky"}, "init.band");
  if (j.contains("kx")) b.kx_max = positive(j["kx"], "init.band.kx");
  if (j.contains("ky")) b.ky_max = positive(j["ky"], "init.band.ky");
}

void read_init(const json& j, InitConfig& in) {
  only_keys(j, {"kind", "seed", "amplitude", "band", "width", "modulation", "modes"}, "init");
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ConfigError("init.kind: expected a string");
    in.kind = j["kind"].get<std::string>();
    if (in.kind != "gaussian" && in.kind != "soliton" && in.kind != "modes")
      throw ConfigError("init.kind: one of gaussian, soliton, modes");
  }
  if (j.contains("seed")) in.seed = static_cast<std::uint64_t>(integer(j["seed"], "init.seed", 0, LONG_MAX));
  if (j.contains("amplitude")) in.amplitude = number(j["amplitude"], "init.amplitude");
  if (!std::isfinite(in.amplitude) || in.amplitude < 0.0) throw ConfigError("init.amplitude: must be >= 0");
  if (j.contains("band")) read_band(j["band"], in.band);
  if (j.contains("width")) in.width = positive(j["width"], "init.width");
  if (j.contains("modulation")) in.modulation = number(j["modulation"], "init.modulation");
  if (j.contains("modes")) {
    if (!j["modes"].is_array()) throw ConfigError("init.modes: expected an array");
    in.modes.clear();
    for (const auto& m : j["modes"]) {
      only_keys(m, {"jx", "jy", "amplitude", "phase"}, "init.modes[]");
      if (!m.contains("jx") || !m.contains("jy") || !m.contains("amplitude"))
        throw ConfigError("init.modes[]: jx, jy and amplitude are required");
      Mode md{static_cast<int>(integer(m["jx"], "init.modes[].jx", -65536, 65536)),
              static_cast<int>(integer(m["jy"], "init.modes[].jy", -65536, 65536)),
              number(m["amplitude"], "init.modes[].amplitude"),
              m.contains("phase") ? number(m["phase"], "init.modes[].phase") : 0.0};
      if (md.jx == 0) throw ConfigError("init.modes[]: jx = 0 violates the zero x-mean constraint");
      in.modes.push_back(md);
    }
  }
  if (in.kind == "modes" && in.modes.empty()) throw ConfigError("init: kind 'modes' needs a modes list");
}

void read_scheme(const json& j, SchemeConfig& s, const std::string& where) {
  only_keys(j, {"dt", "dealias"}, where);
  if (j.contains("dt")) s.dt = positive(j["dt"], where + ".dt");
  if (j.contains("dealias")) s.dealias = positive(j["dealias"], where + ".dealias");
  if (s.dealias > 2.0 / 3.0 + 1e-12) throw ConfigError(where + ".dealias: must be <= 2/3");
}

void read_uniqueness(const json& j, UniquenessConfig& u) {
  only_keys(j, {"scheme_a", "scheme_b", "levels", "sobolev", "record_dt"}, "uniqueness");
  if (j.contains("scheme_a")) read_scheme(j["scheme_a"], u.a, "uniqueness.scheme_a");
  if (j.contains("scheme_b")) read_scheme(j["scheme_b"], u.b, "uniqueness.scheme_b");
  if (j.contains("levels")) u.levels = static_cast<int>(integer(j["levels"], "uniqueness.levels", 1, 8));
  if (j.contains("sobolev")) u.sobolev = numbers(j["sobolev"], "uniqueness.sobolev");
  if (j.contains("record_dt")) u.record_dt = positive(j["record_dt"], "uniqueness.record_dt");
  for (const SchemeConfig* s : {&u.a, &u.b}) {
    const double m = u.record_dt / s->dt;
    if (std::abs(m - std::round(m)) > 1e-9 * m || m < 1.0 - 1e-12)
      throw ConfigError("uniqueness: record_dt must be a whole multiple of each scheme's dt");
  }
}

void read_scaling(const json& j, ScalingConfig& s) {
  only_keys(j, {"norms", "epsilon", "lambda", "T"}, "scaling");
  if (j.contains("norms")) s.norms = numbers(j["norms"], "scaling.norms");
  if (j.contains("epsilon")) s.epsilon = numbers(j["epsilon"], "scaling.epsilon");
  if (j.contains("lambda")) {
    s.lambda = positive(j["lambda"], "scaling.lambda");
    int e = 0;
    if (std::frexp(s.lambda, &e) != 0.5) throw ConfigError("scaling.lambda: must be a power of two");
  }
  if (j.contains("T")) s.T = positive(j["T"], "scaling.T");
}

void read_strichartz(const json& j, StrichartzConfig& s) {
  only_keys(j, {"Lx", "Ly", "nx", "ny", "packet_x", "horizon"}, "strichartz");
  ProbeGeometry& g = s.geometry;
  if (j.contains("Lx")) g.Lx = positive(j["Lx"], "strichartz.Lx");
  if (j.contains("Ly")) g.Ly = positive(j["Ly"], "strichartz.Ly");
  if (j.contains("nx")) g.nx = static_cast<int>(integer(j["nx"], "strichartz.nx", 16, 1 << 16));
  if (j.contains("ny")) g.ny = static_cast<int>(integer(j["ny"], "strichartz.ny", 16, 1 << 16));
  if (!power_of_two(g.nx) || !power_of_two(g.ny)) throw ConfigError("strichartz: nx and ny must be powers of two");
  if (j.contains("packet_x")) g.packet_x = positive(j["packet_x"], "strichartz.packet_x");
  if (g.packet_x >= g.Lx) throw ConfigError("strichartz.packet_x: must lie inside the box");
  if (j.contains("horizon")) s.horizon = positive(j["horizon"], "strichartz.horizon");
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  only_keys(doc, {"delta", "grid", "dt", "T", "dealias", "c3", "record_stride", "nonlinear", "init", "seed", "samples",
                  "uniqueness", "scaling", "strichartz"},
            "config");
  RunConfig cfg;
  ModelParams& p = cfg.params;
  if (doc.contains("delta")) {
    const long d = integer(doc["delta"], "delta", -1, 1);
    if (d == 0) throw ConfigError("delta: must be +1 (KP-I) or -1 (KP-II)");
    p.delta = DispersionSign(static_cast<int>(d));
  }
  if (doc.contains("grid")) read_grid(doc["grid"], cfg.grid);
  if (doc.contains("dt")) p.dt = positive(doc["dt"], "dt");
  if (doc.contains("T")) p.T = positive(doc["T"], "T");
  if (doc.contains("dealias")) p.dealias = positive(doc["dealias"], "dealias");
  if (doc.contains("c3")) p.c3 = number(doc["c3"], "c3");
  if (doc.contains("record_stride"))
    p.record_stride = static_cast<int>(integer(doc["record_stride"], "record_stride", 1, 1 << 20));
  if (doc.contains("nonlinear")) {
    if (!doc["nonlinear"].is_boolean()) throw ConfigError("nonlinear: expected a boolean");
    p.nonlinear = doc["nonlinear"].get<bool>();
  }
  if (doc.contains("init")) read_init(doc["init"], cfg.init);
  if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(integer(doc["seed"], "seed", 0, LONG_MAX));
  if (doc.contains("samples")) cfg.samples = static_cast<int>(integer(doc["samples"], "samples", 0, 100000000));  // 0: suite default
  if (doc.contains("uniqueness")) read_uniqueness(doc["uniqueness"], cfg.uniqueness);
  if (doc.contains("scaling")) read_scaling(doc["scaling"], cfg.scaling);
  if (doc.contains("strichartz")) read_strichartz(doc["strichartz"], cfg.strichartz);
  p.validate();
  cfg.source = to_json(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_run_config(doc);
}

json to_json(const RunConfig& c) {
  const ModelParams& p = c.params;
  json modes = json::array();
  for (const Mode& m : c.init.modes)
    modes.push_back({{"jx", m.jx}, {"jy", m.jy}, {"amplitude", m.amplitude}, {"phase", m.phase}});
  auto scheme = [](const SchemeConfig& s) { return json{{"dt", s.dt}, {"dealias", s.dealias}}; };
  return {{"delta", p.delta.value()},
          {"grid", {{"Lx", c.grid.Lx}, {"Ly", c.grid.Ly}, {"nx", c.grid.nx}, {"ny", c.grid.ny}}},
          {"dt", p.dt},
          {"T", p.T},
          {"dealias", p.dealias},
          {"c3", p.c3},
          {"record_stride", p.record_stride},
          {"nonlinear", p.nonlinear},
          {"init",
           {{"kind", c.init.kind},
            {"seed", c.init.seed},
            {"amplitude", c.init.amplitude},
            {"band", {{"kx", c.init.band.kx_max}, {"ky", c.init.band.ky_max}}},
            {"width", c.init.width},
            {"modulation", c.init.modulation},
            {"modes", modes}}},
          {"seed", c.seed},
          {"samples", c.samples},
          {"uniqueness",
           {{"scheme_a", scheme(c.uniqueness.a)},
            {"scheme_b", scheme(c.uniqueness.b)},
            {"levels", c.uniqueness.levels},
            {"sobolev", c.uniqueness.sobolev},
            {"record_dt", c.uniqueness.record_dt}}},
          {"scaling",
           {{"norms", c.scaling.norms},
            {"epsilon", c.scaling.epsilon},
            {"lambda", c.scaling.lambda},
            {"T", c.scaling.T}}},
          {"strichartz",
           {{"Lx", c.strichartz.geometry.Lx},
            {"Ly", c.strichartz.geometry.Ly},
            {"nx", c.strichartz.geometry.nx},
            {"ny", c.strichartz.geometry.ny},
            {"packet_x", c.strichartz.geometry.packet_x},
            {"horizon", c.strichartz.horizon}}}};
}

std::string config_hash(const json& doc) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Grid2D make_grid(const GridConfig& g) { return Grid2D(g.Lx, g.Ly, g.nx, g.ny); }

Field2D make_initial_data(const RunConfig& cfg) {
  const Grid2D g = make_grid(cfg.grid);
  const InitConfig& in = cfg.init;
  if (in.kind == "soliton") return line_soliton_proxy(g, in.amplitude, in.width, in.modulation);
  if (in.kind == "modes") return mode_combination(g, in.modes);
  return gaussian_random_field(g, in.seed, in.amplitude, in.band);
}

}  // namespace kp5::lab
