#include "polarpunct/erasure.hpp"

namespace polarpunct {

namespace {

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

bool recursive_symmetric(const std::vector<uint8_t>& bits, size_t off, size_t len) {
    if (len == 1) return true;
    size_t h = len / 2;
    for (size_t j = 0; j < h; ++j)
        if (bits[off + h + j] && !bits[off + j]) return false;
    return recursive_symmetric(bits, off, h) && recursive_symmetric(bits, off + h, h);
}

} // namespace

Pattern erasure_pattern(const Pattern& p) {
    Pattern e = p;
    auto& w = e.words();
    const size_t N = e.size();
    for (size_t d = N / 2; d >= 1; d /= 2) {
        if (d >= 64) {
            size_t s = d >> 6;
            for (size_t b = 0; b < w.size(); b += 2 * s) {
                for (size_t t = 0; t < s; ++t) {
                    uint64_t lo = w[b + t], hi = w[b + s + t];
                    w[b + t] = lo | hi;
                    w[b + s + t] = lo & hi;
                }
            }
        } else {
            uint64_t m = half_mask(static_cast<unsigned>(d));
            for (auto& x : w) {
                uint64_t lo = x & m;
                uint64_t hi = (x >> d) & m;
                x = (lo | hi) | ((lo & hi) << d);
            }
        }
    }
    return e;
}

bool is_symmetric(const Pattern& p) { return erasure_pattern(p) == p; }

bool symmetric_recursive_test(const Pattern& p) {
    Pattern r = apply_bit_reversal(p);
    std::vector<uint8_t> bits(r.size());
    for (size_t i = 0; i < r.size(); ++i) bits[i] = r.get(i);
    return recursive_symmetric(bits, 0, bits.size());
}

} // namespace polarpunct
