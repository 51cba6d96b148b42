#pragma once

#include <stdexcept>
#include <string>

namespace voac {

// Error taxonomy. The C API maps each type to a status code; everything else
// surfaces as an internal error.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// substitution or evaluation hit a zero denominator
struct PoleError : Error {
    using Error::Error;
};

// truncation order or cutoff contract violated
struct CutoffError : Error {
    using Error::Error;
};

// malformed input: parse failure, domain violation, bad configuration
struct InvalidError : Error {
    using Error::Error;
};

// a verification predicate failed (identity mismatch, audit failure)
struct VerifyError : Error {
    using Error::Error;
};

} // namespace voac
