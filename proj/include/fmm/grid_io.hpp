#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "fmm/grid.hpp"

namespace fmm {

enum class DumpFormat { Csv, Raw };

DumpFormat parse_dump_format(std::string_view name);

/// Reads (n+1) rows of (n+1) comma-separated reals; row i holds x-index i.
/// n is inferred from the row count. Blank lines and lines starting with
/// '#' are ignored.
SpeedField read_speed_csv(std::istream& in);
SpeedField load_speed_csv(const std::filesystem::path& path);

void write_grid_csv(std::ostream& out, const GridSpec& spec, std::span<const double> values);

/// Little-endian IEEE-754 binary64, row-major, no header.
void write_grid_raw(std::ostream& out, std::span<const double> values);

/// Writes through a sibling temp file and renames it into place, so readers
/// never observe a truncated file.
void write_file_atomically(const std::filesystem::path& path, const std::string& bytes);

void save_grid(const std::filesystem::path& path, const GridFunction& t, DumpFormat format);

/// Shortest round-trip decimal representation; "inf" for +inf.
std::string format_real(double v);

}  // namespace fmm
