#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// Thrown by pattern_orbit when the class exceeds the caller's size cap.
struct OrbitOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Swap the adjacent blocks [k, k+2^j) and [k+2^j, k+2^{j+1}).
/// k must be a multiple of 2^{j+1}. Self-inverse.
Pattern apply_elementary(const Pattern& p, size_t k, int j);
void apply_elementary_inplace(std::vector<double>& v, size_t k, int j);

/// One bottom-up pass over all block levels (j = 0..n-1, aligned offsets k):
/// within each pair of sibling blocks, swap iff the left is lexicographically
/// smaller. Acting on bit-reversed patterns this reaches the lex-greatest
/// member of the equivalence class in a single pass.
Pattern block_sort_pass(const Pattern& p);

/// Canonical class representative: bit-reverse, block-sort, bit-reverse back.
Pattern canonical_pattern(const Pattern& p);

/// A pattern is primitive iff it is its own canonical representative;
/// equivalence classes contain exactly one primitive pattern.
bool is_primitive(const Pattern& p);

/// Same predicate via the half-split recursion on the bit-reversed pattern:
/// both halves pass recursively (after bit-reversal at their own length) and
/// the second half is lexicographically <= the first.
bool primitive_recursive_test(const Pattern& p);

/// Full equivalence class of p, obtained by closing the bit-reversed pattern
/// under elementary block swaps (breadth-first, deterministic order).
/// Throws OrbitOverflowError once more than max_size members are found.
std::vector<Pattern> pattern_orbit(const Pattern& p, size_t max_size = 1u << 20);

} // namespace polarpunct
