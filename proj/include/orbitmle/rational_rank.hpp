#pragma once

#include <gmpxx.h>

#include <vector>

#include "orbitmle/types.hpp"

namespace orbitmle {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Exact rank over the rationals by fraction-free (Bareiss) elimination
/// with full pivoting. The input is consumed.
int rational_rank(IntMatrix m);

/// Exact rank of a floating-point matrix: every double is a rational, so rows
/// are scaled to integers and eliminated exactly.
int rational_rank(const Matrix& m);

}  // namespace orbitmle
