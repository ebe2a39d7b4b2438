#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logicscan {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over the target, so readers
// never observe a half-written file.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace logicscan
