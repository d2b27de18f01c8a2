#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "gkritz/tables.hpp"

namespace gkritz {

enum class OutputFormat { Human, Csv, JsonLines };

std::string to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);

/// Column order shared by the CSV header and the JSON-lines keys.
inline constexpr const char* kReportColumns[] = {"row",    "N",         "l",    "D",       "level",
                                                 "A_star", "B_star",    "bound", "oracle", "reference",
                                                 "deviation", "pass", "wall_ms"};

/// 9 significant digits, '.' decimal point regardless of locale.
std::string format_number(double x);

void emit_results(const TableReport& report, OutputFormat format, std::ostream& out);
std::string emit_results(const TableReport& report, OutputFormat format);

/// Writes to a file; throws std::runtime_error naming the path on failure.
void write_results(const TableReport& report, OutputFormat format, const std::filesystem::path& path);

/// Inverse of the CSV and JSON-lines emitters. Throws std::invalid_argument
/// with the offending line number on malformed input.
TableReport parse_csv(std::string_view text);
TableReport parse_json_lines(std::string_view text);

}  // namespace gkritz
