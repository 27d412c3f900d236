#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace pseudospec::io {

/// Writes to "<path>.tmp" in the same directory, then renames over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

}  // namespace pseudospec::io
