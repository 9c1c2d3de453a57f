#pragma once

#include <vector>

#include "types.hpp"

namespace zx {

// B_2, B_4, ..., B_{2k}, ... as rung values. Derived from exact tangent
// numbers (integer recurrence; the naive Bernoulli recurrence is numerically
// unstable). Index 0 holds B_2.
template <class R>
const std::vector<R>& bernoulli_even(int count);

}  // namespace zx
