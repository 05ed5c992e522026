#pragma once

#include <string>
#include <string_view>

namespace qpwh {

// Writes to a temporary file in the same directory, then renames over `path`.
// Throws std::runtime_error on any filesystem failure.
void write_file_atomic(const std::string& path, std::string_view bytes);

} // namespace qpwh
