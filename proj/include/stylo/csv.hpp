#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Minimal RFC-4180 style CSV. Double-quoted fields may contain commas,
// embedded quotes ("" escape) and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file);

// Quotes the field only when it needs it.
std::string csv_field(std::string_view value);

std::string read_file(const std::filesystem::path& file);
void write_file(const std::filesystem::path& file, std::string_view content);

}  // namespace stylo
