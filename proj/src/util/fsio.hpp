#pragma once

#include <string>

namespace voac::util {

std::string read_file(const std::string& path);

// write via temp file + rename in the same directory; partial outputs are
// never observable at `path`
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace voac::util
