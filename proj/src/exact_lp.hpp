#pragma once

// Phase-one simplex over Q. Internal helper for the projectivity test.

#include <vector>

#include "toric/lattice.hpp"

namespace toric::detail {

/// True iff some x >= 0 satisfies A x = b. Bland's rule, exact arithmetic.
bool nonnegative_feasible(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b);

}  // namespace toric::detail
