#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace orbtherm {

std::string version_string();

// Fixed scientific notation, 9 significant digits.
std::string format_number(double x);

std::string sha256_hex(std::string_view data);

// Comment lines carried by every emitted file.
std::vector<std::string> stamp_lines(const std::string& config_digest);

// Comma-separated table with '#' comment lines, a header row and one row per record.
std::string csv_table(const std::vector<std::string>& comments, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

// Writes the whole file or throws with the path in the message.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace orbtherm
