#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace clientlab {

// Shortest round-trip decimal form (std::to_chars); integers print bare.
std::string format_double(double v);

std::string read_file(const std::string& path);

// Write-to-temp-then-rename in the target directory, so readers never see
// a half-written artifact.
void write_file_atomic(const std::string& path, std::string_view content);

std::string join(const std::vector<std::string>& parts, char sep);

}  // namespace clientlab
