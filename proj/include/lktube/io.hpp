#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace lktube {

// Full-precision scientific notation, 17 significant digits, for diffable CSV.
std::string format_sci(double v);

// Write-to-temp then atomic rename, so failures never leave partial files.
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace lktube
