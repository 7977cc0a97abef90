#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dgf/matrix_core.hpp"

namespace dgf {

/// Formats with 17 significant digits so a reload reproduces the exact
/// double (round-trip faithful).
std::string format_double(double v);

/// Strict parse of a full token; rejects trailing garbage, empty fields,
/// inf and nan.
double parse_double(std::string_view token);

/// Matrix files: n rows of n comma-separated decimals, no header.
/// Ragged rows are rejected.
SquareMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const SquareMatrix& m);

/// Vector files: a single CSV row.
std::vector<double> read_vector_csv(const std::filesystem::path& path);
void write_vector_csv(const std::filesystem::path& path, std::span<const double> v);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace dgf
