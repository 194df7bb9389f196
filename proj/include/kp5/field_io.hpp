#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kp5/field.hpp"

namespace kp5 {

// Container layout: one line of JSON ({"format":"kp5-field","version":1,
// "Lx","Ly","nx","ny","zero_x_mean"}) terminated by '\n', followed by
// nx*ny little-endian float64 samples in row-major (x-major) order.
void write_field(std::ostream& out, const Field2D& u);
Field2D read_field(std::istream& in);

// Trajectory container: header {"format":"kp5-trajectory", grid..., "times":[...]}
// followed by the fields back to back.
void write_fields(std::ostream& out, const std::vector<double>& times, const std::vector<Field2D>& fields);
std::pair<std::vector<double>, std::vector<Field2D>> read_fields(std::istream& in);

/// Write bytes to path via a sibling temp file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

}  // namespace kp5
