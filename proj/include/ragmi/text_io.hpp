#pragma once

#include <filesystem>
#include <string>

namespace ragmi {

/// Shortest round-trip decimal form of x (std::to_chars), so emitted CSV and
/// JSON artifacts are byte-stable across runs.
std::string format_double(double x);

/// Quotes a CSV field only when it contains a comma, quote or newline.
std::string csv_field(const std::string& value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ragmi
