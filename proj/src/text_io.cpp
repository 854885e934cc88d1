#include "ragmi/text_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ragmi/errors.hpp"

namespace ragmi {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file " + path.string());
  out << content;
}

}  // namespace ragmi
