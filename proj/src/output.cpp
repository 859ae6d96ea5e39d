#include "orbtherm/output.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/sha.h>

namespace orbtherm {

std::string version_string() { return ORBTHERM_VERSION; }

std::string format_number(double x) { return fmt::format("{:.8e}", x); }

std::string sha256_hex(std::string_view data) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char c : md) out += fmt::format("{:02x}", c);
  return out;
}

std::vector<std::string> stamp_lines(const std::string& config_digest) {
  return {"orbtherm " + version_string(), "config-digest " + config_digest};
}

std::string csv_table(const std::vector<std::string>& comments, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw std::logic_error("csv_table: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace orbtherm
