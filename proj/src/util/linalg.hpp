#pragma once

#include "exact/rational.hpp"

#include <optional>
#include <vector>

namespace voac::util {

using Matrix = std::vector<std::vector<exact::Rational>>;

Matrix identity(std::size_t n);
Matrix mat_mul(const Matrix& a, const Matrix& b);

// Gauss-Jordan; nullopt when singular
std::optional<Matrix> invert(Matrix m);

} // namespace voac::util
