#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "polarpunct/pattern.hpp"

namespace polarpunct {

enum class EnumStatus { complete, cap_hit };

/// Explicit resource caps. Hitting one terminates the walk with a distinct
/// status instead of an exception; emitted output up to that point is valid.
struct EnumLimits {
    uint64_t max_emitted = UINT64_MAX;
    uint64_t max_nodes = UINT64_MAX;  // candidate evaluations / table entries
};

/// Stream every primitive pattern of length 2^n (n <= 6) and the given
/// weight, each exactly once, built bottom-up from the half-length tables in
/// the bit-reversed domain (pairs with the second half lex <= the first).
EnumStatus enumerate_primitive(int n, size_t weight,
                               const std::function<void(const Pattern&)>& emit,
                               const EnumLimits& limits = {});

/// Stream every symmetric pattern of length 2^n and the given weight exactly
/// once. For n <= 6 this uses the subset-pair recursion in the bit-reversed
/// domain; for larger n it falls back to the search tree with unbounded order.
EnumStatus enumerate_symmetric_all(int n, size_t weight,
                                   const std::function<void(const Pattern&)>& emit,
                                   const EnumLimits& limits = {});

/// Depth-first generator of symmetric patterns as unions of generator rows
/// with strictly decreasing row indices. A candidate row is admissible iff
/// it contributes new weight without exceeding the remaining budget (and at
/// the last level, iff it lands exactly); a pattern is emitted when the
/// union's weight reaches target_weight, together with its order (the depth,
/// which equals the size of its minimal generating antichain). Each pattern
/// of order <= max_order is emitted exactly once, in deterministic order.
EnumStatus search_tree_symmetric(
    int n, size_t target_weight, int max_order,
    const std::function<void(const Pattern&, int order)>& emit,
    const EnumLimits& limits = {});

struct SearchTreeCount {
    uint64_t total = 0;
    std::vector<uint64_t> by_order;  // index 0 = order 1
    uint64_t nodes = 0;
    EnumStatus status = EnumStatus::complete;
};

/// Count-only walk (no pattern materialization). workers > 1 partitions the
/// top-level row index across threads; results are identical for any worker
/// count (caps are checked at fixed branch-wave boundaries).
SearchTreeCount count_search_tree_symmetric(int n, size_t target_weight,
                                            int max_order, int workers = 1,
                                            const EnumLimits& limits = {});

} // namespace polarpunct
