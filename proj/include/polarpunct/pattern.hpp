#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polarpunct {

/// Binary vector of length N = 2^n, bit-packed into 64-bit words.
/// Used both for puncturing patterns (1 = punctured coded position) and for
/// data/code words under the GF(2) polar transform. Bit i of the vector lives
/// at word i/64, bit i%64; unused high bits of the last word are kept zero.
class Pattern {
public:
    static constexpr int max_log2_length = 20;

    explicit Pattern(int n) : n_(n) {
        if (n < 0 || n > max_log2_length)
            throw std::invalid_argument("Pattern: log2 length out of range");
        words_.assign(word_count(n), 0);
    }

    /// Length-2^n pattern from the low N bits of `bits` (n <= 6).
    static Pattern from_word(int n, uint64_t bits) {
        if (n > 6) throw std::invalid_argument("Pattern::from_word: n > 6");
        Pattern p(n);
        p.words_[0] = n == 6 ? bits : bits & ((uint64_t{1} << (1u << n)) - 1);
        return p;
    }

    /// Build from 0/1 values, index 0 first. Size must be a power of two.
    static Pattern from_bits(const std::vector<int>& bits);

    int n() const { return n_; }
    size_t size() const { return size_t{1} << n_; }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i, bool v) {
        uint64_t m = uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    size_t weight() const {
        size_t w = 0;
        for (uint64_t x : words_) w += std::popcount(x);
        return w;
    }
    bool any() const {
        for (uint64_t x : words_) if (x) return true;
        return false;
    }

    Pattern& operator|=(const Pattern& o) {
        check_same(o);
        for (size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Pattern& operator&=(const Pattern& o) {
        check_same(o);
        for (size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    Pattern& operator^=(const Pattern& o) {
        check_same(o);
        for (size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }
    friend Pattern operator|(Pattern a, const Pattern& b) { return a |= b; }
    friend Pattern operator&(Pattern a, const Pattern& b) { return a &= b; }
    friend Pattern operator^(Pattern a, const Pattern& b) { return a ^= b; }

    /// True iff every set bit of `o` is also set here.
    bool includes(const Pattern& o) const {
        check_same(o);
        for (size_t k = 0; k < words_.size(); ++k)
            if (o.words_[k] & ~words_[k]) return false;
        return true;
    }
    bool disjoint(const Pattern& o) const {
        check_same(o);
        for (size_t k = 0; k < words_.size(); ++k)
            if (o.words_[k] & words_[k]) return false;
        return true;
    }

    bool operator==(const Pattern& o) const {
        return n_ == o.n_ && words_ == o.words_;
    }

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

    size_t hash() const {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n_);
        for (uint64_t x : words_) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<size_t>(h ^ (h >> 33));
    }

    static size_t word_count(int n) { return n <= 6 ? 1 : (size_t{1} << (n - 6)); }

private:
    void check_same(const Pattern& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Pattern: length mismatch");
    }
    int n_;
    std::vector<uint64_t> words_;
};

/// Three-way lexicographic compare with index 0 most significant: the vector
/// with a 0 at the first differing index is the smaller one, so
/// [1,0] < [1,1]. Returns -1, 0 or +1.
int lex_compare(const Pattern& a, const Pattern& b);

/// Reverse the n-bit binary representation of i (i < 2^n).
uint32_t bit_reversal(int n, uint32_t i);

/// Q(i) = P(bit_reversal(i)); an involution.
Pattern apply_bit_reversal(const Pattern& p);

/// Row i of the polar transform G_N = [[1,0],[1,1]]^{kron n} in natural order.
/// Its support is exactly { j : j AND i == j }, so its weight is 2^popcount(i).
Pattern generator_row(int n, uint32_t i);

/// In-place x = u * G_N over GF(2) (butterfly, O(N log N / 64) word ops).
/// G_N is an involution, so encoding twice restores the input.
void polar_encode(Pattern& word);

/// Decreasing row indices whose generator rows union to P. Present iff the
/// support of P is closed under clearing bits (then the maximal support
/// elements are the unique minimal generating antichain). The all-zero
/// pattern yields an empty list. The list size is the pattern's order.
std::optional<std::vector<uint32_t>> minimal_generators(const Pattern& p);

} // namespace polarpunct

template <>
struct std::hash<polarpunct::Pattern> {
    size_t operator()(const polarpunct::Pattern& p) const { return p.hash(); }
};
