#pragma once

#include <cstddef>

#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// Quasi-uniform puncturing: drop the first n_p coded positions in the
/// natural generator ordering. A prefix {0..n_p-1} is downward-closed under
/// bitwise subset, so the result is always symmetric.
Pattern qup_pattern(int n, size_t n_p);

struct ShorteningPlan {
    Pattern shortened;      // coded positions held at zero and not transmitted
    Pattern forced_frozen;  // data positions that must stay frozen for that
};

/// Shorten the last n_s coded positions. Freezing the same-index data bits
/// forces those coded bits to zero for every payload, so the decoder may
/// treat them as perfectly known.
ShorteningPlan shortening_pattern(int n, size_t n_s);

} // namespace polarpunct
