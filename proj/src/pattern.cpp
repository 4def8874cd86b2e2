#include "polarpunct/pattern.hpp"

namespace polarpunct {

namespace {

// bit j set iff (j mod 2d) < d, for sub-word butterfly distances
constexpr uint64_t half_mask(unsigned d) {
    switch (d) {
        case 1:  return 0x5555555555555555ull;
        case 2:  return 0x3333333333333333ull;
        case 4:  return 0x0f0f0f0f0f0f0f0full;
        case 8:  return 0x00ff00ff00ff00ffull;
        case 16: return 0x0000ffff0000ffffull;
        case 32: return 0x00000000ffffffffull;
    }
    return 0;
}

} // namespace

Pattern Pattern::from_bits(const std::vector<int>& bits) {
    size_t N = bits.size();
    if (N == 0 || (N & (N - 1)) != 0)
        throw std::invalid_argument("Pattern::from_bits: size not a power of two");
    int n = std::countr_zero(N);
    Pattern p(n);
    for (size_t i = 0; i < N; ++i) {
        if (bits[i] != 0 && bits[i] != 1)
            throw std::invalid_argument("Pattern::from_bits: entries must be 0/1");
        if (bits[i]) p.set(i, true);
    }
    return p;
}

int lex_compare(const Pattern& a, const Pattern& b) {
    if (a.n() != b.n()) throw std::invalid_argument("lex_compare: length mismatch");
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (size_t k = 0; k < wa.size(); ++k) {
        uint64_t x = wa[k] ^ wb[k];
        if (x) {
            // lowest set bit of the xor is the first differing index
            return (wb[k] >> std::countr_zero(x)) & 1 ? -1 : 1;
        }
    }
    return 0;
}

uint32_t bit_reversal(int n, uint32_t i) {
    if (n < 0 || n > Pattern::max_log2_length || (n < 32 && i >= (uint32_t{1} << n)))
        throw std::invalid_argument("bit_reversal: index out of range");
    uint32_t r = 0;
    for (int k = 0; k < n; ++k)
        if (i >> k & 1) r |= uint32_t{1} << (n - 1 - k);
    return r;
}

Pattern apply_bit_reversal(const Pattern& p) {
    const int n = p.n();
    const size_t N = p.size();
    Pattern q(n);
    for (size_t i = 0; i < N; ++i)
        if (p.get(i)) q.set(bit_reversal(n, static_cast<uint32_t>(i)), true);
    return q;
}

Pattern generator_row(int n, uint32_t i) {
    if (n < 0 || n > Pattern::max_log2_length || (n < 32 && i >= (uint32_t{1} << n)))
        throw std::invalid_argument("generator_row: index out of range");
    // tensor doubling: appending factor [1,0] or [1,1] per bit of i
    Pattern p(n);
    p.set(0, true);
    for (int b = 0; b < n; ++b) {
        size_t half = size_t{1} << b;
        if (i >> b & 1)
            for (size_t j = 0; j < half; ++j)
                if (p.get(j)) p.set(half + j, true);
    }
    return p;
}

void polar_encode(Pattern& word) {
    auto& w = word.words();
    const size_t N = word.size();
    for (size_t d = N / 2; d >= 1; d /= 2) {
        if (d >= 64) {
            size_t s = d >> 6;
            for (size_t b = 0; b < w.size(); b += 2 * s)
                for (size_t t = 0; t < s; ++t) w[b + t] ^= w[b + s + t];
        } else {
            uint64_t m = half_mask(static_cast<unsigned>(d));
            for (auto& x : w) x ^= (x >> d) & m;
        }
    }
}

std::optional<std::vector<uint32_t>> minimal_generators(const Pattern& p) {
    const int n = p.n();
    const uint32_t N = static_cast<uint32_t>(p.size());
    // support must be closed under clearing any single bit
    for (uint32_t j = 0; j < N; ++j) {
        if (!p.get(j)) continue;
        for (int b = 0; b < n; ++b)
            if ((j >> b & 1) && !p.get(j ^ (uint32_t{1} << b)))
                return std::nullopt;
    }
    std::vector<uint32_t> gens;
    for (uint32_t j = N; j-- > 0;) {
        if (!p.get(j)) continue;
        bool maximal = true;
        for (int b = 0; b < n && maximal; ++b)
            if (!(j >> b & 1) && p.get(j | (uint32_t{1} << b))) maximal = false;
        if (maximal) gens.push_back(j);
    }
    return gens;
}

} // namespace polarpunct
