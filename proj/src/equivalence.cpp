#include "polarpunct/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace polarpunct {

namespace {

void check_elementary(size_t N, size_t k, int j) {
    size_t blk = size_t{1} << j;
    if (j < 0 || 2 * blk > N || k % (2 * blk) != 0 || k + 2 * blk > N)
        throw std::invalid_argument("elementary permutation: bad (k, j)");
}

// lexicographic compare of two equal-length ranges in a 0/1 byte vector
int range_lex(const std::vector<uint8_t>& v, size_t a, size_t b, size_t len) {
    for (size_t t = 0; t < len; ++t) {
        if (v[a + t] != v[b + t]) return v[a + t] < v[b + t] ? -1 : 1;
    }
    return 0;
}

bool recursive_primitive(const std::vector<uint8_t>& bits, size_t off, size_t len) {
    if (len == 1) return true;
    size_t h = len / 2;
    // second half must not be lex-greater than the first
    if (range_lex(bits, off, off + h, h) < 0) return false;
    return recursive_primitive(bits, off, h) && recursive_primitive(bits, off + h, h);
}

} // namespace

Pattern apply_elementary(const Pattern& p, size_t k, int j) {
    check_elementary(p.size(), k, j);
    size_t blk = size_t{1} << j;
    Pattern q = p;
    for (size_t t = 0; t < blk; ++t) {
        bool a = q.get(k + t), b = q.get(k + blk + t);
        q.set(k + t, b);
        q.set(k + blk + t, a);
    }
    return q;
}

void apply_elementary_inplace(std::vector<double>& v, size_t k, int j) {
    check_elementary(v.size(), k, j);
    size_t blk = size_t{1} << j;
    std::swap_ranges(v.begin() + k, v.begin() + k + blk, v.begin() + k + blk);
}

Pattern block_sort_pass(const Pattern& p) {
    const size_t N = p.size();
    std::vector<uint8_t> bits(N);
    for (size_t i = 0; i < N; ++i) bits[i] = p.get(i);
    for (int j = 0; j < p.n(); ++j) {
        size_t blk = size_t{1} << j;
        for (size_t k = 0; k + 2 * blk <= N; k += 2 * blk) {
            if (range_lex(bits, k, k + blk, blk) < 0)
                std::swap_ranges(bits.begin() + k, bits.begin() + k + blk,
                                 bits.begin() + k + blk);
        }
    }
    Pattern q(p.n());
    for (size_t i = 0; i < N; ++i)
        if (bits[i]) q.set(i, true);
    return q;
}

Pattern canonical_pattern(const Pattern& p) {
    return apply_bit_reversal(block_sort_pass(apply_bit_reversal(p)));
}

bool is_primitive(const Pattern& p) { return canonical_pattern(p) == p; }

bool primitive_recursive_test(const Pattern& p) {
    // The half-split condition naturally lives in the bit-reversed domain:
    // recursing there makes the per-level reversals implicit.
    Pattern r = apply_bit_reversal(p);
    std::vector<uint8_t> bits(r.size());
    for (size_t i = 0; i < r.size(); ++i) bits[i] = r.get(i);
    return recursive_primitive(bits, 0, bits.size());
}

std::vector<Pattern> pattern_orbit(const Pattern& p, size_t max_size) {
    const size_t N = p.size();
    Pattern start = apply_bit_reversal(p);
    std::unordered_set<Pattern> seen{start};
    std::deque<Pattern> frontier{start};
    while (!frontier.empty()) {
        Pattern cur = std::move(frontier.front());
        frontier.pop_front();
        for (int j = 0; j < p.n(); ++j) {
            size_t blk = size_t{1} << j;
            for (size_t k = 0; k + 2 * blk <= N; k += 2 * blk) {
                Pattern next = apply_elementary(cur, k, j);
                if (seen.insert(next).second) {
                    if (seen.size() > max_size)
                        throw OrbitOverflowError("pattern_orbit: class exceeds max_size");
                    frontier.push_back(std::move(next));
                }
            }
        }
    }
    std::vector<Pattern> orbit;
    orbit.reserve(seen.size());
    for (const auto& r : seen) orbit.push_back(apply_bit_reversal(r));
    return orbit;
}

} // namespace polarpunct
