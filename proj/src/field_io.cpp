#include "kp5/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "kp5/errors.hpp"

namespace kp5 {
namespace {

static_assert(std::endian::native == std::endian::little, "container format assumes little-endian hosts");

nlohmann::json grid_json(const Grid2D& g) {
  return {{"Lx", g.Lx()}, {"Ly", g.Ly()}, {"nx", g.nx()}, {"ny", g.ny()}};
}

Grid2D grid_from_json(const nlohmann::json& h) {
  return build_grid(h.at("Lx").get<double>(), h.at("Ly").get<double>(), h.at("nx").get<int>(),
                    h.at("ny").get<int>());
}

nlohmann::json read_header(std::istream& in, const std::string& format) {
  std::string line;
  if (!std::getline(in, line)) throw ContractError("missing container header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ContractError(std::string("malformed container header: ") + e.what());
  }
  if (h.value("format", "") != format) throw ContractError("unexpected container format");
  return h;
}

void write_samples(std::ostream& out, std::span<const double> s) {
  out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size_bytes()));
}

std::vector<double> read_samples(std::istream& in, std::size_t n) {
  std::vector<double> s(n);
  in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(n * sizeof(double)))
    throw ContractError("container truncated");
  return s;
}

}  // namespace

void write_field(std::ostream& out, const Field2D& u) {
  nlohmann::json h = grid_json(u.grid());
  h["format"] = "kp5-field";
  h["version"] = 1;
  h["zero_x_mean"] = u.zero_x_mean();
  out << h.dump() << '\n';
  write_samples(out, u.samples());
}

Field2D read_field(std::istream& in) {
  const auto h = read_header(in, "kp5-field");
  const Grid2D g = grid_from_json(h);
  return Field2D(g, read_samples(in, g.size()), h.at("zero_x_mean").get<bool>());
}

void write_fields(std::ostream& out, const std::vector<double>& times, const std::vector<Field2D>& fields) {
  if (times.size() != fields.size() || fields.empty())
    throw ContractError("trajectory container needs one time per field");
  nlohmann::json h = grid_json(fields.front().grid());
  h["format"] = "kp5-trajectory";
  h["version"] = 1;
  h["zero_x_mean"] = fields.front().zero_x_mean();
  h["times"] = times;
  out << h.dump() << '\n';
  for (const auto& f : fields) write_samples(out, f.samples());
}

std::pair<std::vector<double>, std::vector<Field2D>> read_fields(std::istream& in) {
  const auto h = read_header(in, "kp5-trajectory");
  const Grid2D g = grid_from_json(h);
  auto times = h.at("times").get<std::vector<double>>();
  const bool zxm = h.at("zero_x_mean").get<bool>();
  std::vector<Field2D> fields;
  fields.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) fields.emplace_back(g, read_samples(in, g.size()), zxm);
  return {std::move(times), std::move(fields)};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kp5
