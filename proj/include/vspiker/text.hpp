#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vspiker {

std::string_view trim(std::string_view s);

/// Whole-string parse; nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view s);

/// Shortest representation that round-trips to the same double.
std::string format_double(double value);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Little-endian IEEE-754 payloads.
std::string encode_doubles(std::span<const double> values);
std::vector<double> decode_doubles(std::string_view base64);

}  // namespace vspiker
