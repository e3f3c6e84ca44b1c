#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/linalg.hpp"

namespace rsp::io {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);
/// Whole-string parse; throws ParseError.
double parse_double(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

// MatrixFile text format:
//   # complex-matrix v1
//   <dim>
//   dim lines of dim whitespace-separated "re,im" pairs
inline constexpr std::string_view kMatrixHeader = "# complex-matrix v1";

std::string write_matrix(const linalg::ComplexMatrix &m);
/// Throws ParseError naming the offending line.
linalg::ComplexMatrix read_matrix(std::string_view text);

std::string read_file(const std::filesystem::path &path);
/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path &path, std::string_view contents);

}  // namespace rsp::io
