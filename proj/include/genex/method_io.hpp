#pragma once

#include <filesystem>
#include <iosfwd>

#include "genex/method.hpp"

namespace genex {

/// Tolerance used for the consistency sums of coefficient files.
inline constexpr double kFileConsistencyTolerance = 1e-9;

/// Reads the coefficient text format:
///
///   # comment
///   order 4
///   psorder 7
///   a_1 a_2 ... a_m b
///
/// One term per data line, terms may differ in length. Throws ParseError
/// naming the offending line.
MethodSpec parse_method(std::istream& in, std::string name = "custom");
MethodSpec load_method(const std::filesystem::path& file);

/// Writes `method` in the format accepted by parse_method (17 significant digits).
void write_method(std::ostream& out, const MethodSpec& method);

}  // namespace genex
