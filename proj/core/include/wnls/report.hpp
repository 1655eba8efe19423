#pragma once

#include <cstdint>
#include <string>

namespace wnls {

// Creates dir (and parents) if needed; throws std::runtime_error on failure.
void ensure_directory(const std::string& dir);

void write_text_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& text);

// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace wnls
