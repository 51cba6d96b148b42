#pragma once

#include <string>

namespace voac::util {

// lowercase hex digest
std::string sha256_hex(const std::string& data);

} // namespace voac::util
