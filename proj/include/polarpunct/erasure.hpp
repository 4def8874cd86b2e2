#pragma once

#include <utility>

#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// One butterfly step on a pair of erasure indicators: the check-side output
/// is erased unless both inputs survive, the variable-side output is erased
/// only if both are. Channel-independent.
inline std::pair<bool, bool> kernel_erasure(bool p0, bool p1) {
    return {p0 || p1, p0 && p1};
}

/// Erasure pattern E[P] on data positions induced by puncturing coded
/// positions P: propagate right-to-left through the transform, pairing
/// positions (j, j + s/2) within each block of size s; the first half takes
/// the OR, the second half the AND. Iterative, O(N log N / 64) word ops.
/// |E[P]| = |P| always, and E[P] is itself symmetric.
Pattern erasure_pattern(const Pattern& p);

/// P is symmetric iff E[P] = P, equivalently iff P is a union of generator
/// rows, equivalently iff its support is closed under bitwise-subset.
bool is_symmetric(const Pattern& p);

/// Same predicate via the half-split recursion on the bit-reversed pattern:
/// both halves pass recursively and the second half's support is contained
/// in the first's. Kept separate so the two routes can cross-check.
bool symmetric_recursive_test(const Pattern& p);

} // namespace polarpunct
