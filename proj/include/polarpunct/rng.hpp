#pragma once

#include <cmath>
#include <cstdint>

namespace polarpunct {

/// Philox4x32-10 counter-based generator. A stream is keyed by (seed,
/// stream id) and its output is a pure function of the block counter, so
/// per-word streams in a simulation are identical no matter which worker
/// produces them or in what order.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream)
        : key0_(static_cast<uint32_t>(seed)),
          key1_(static_cast<uint32_t>(seed >> 32)),
          stream_lo_(static_cast<uint32_t>(stream)),
          stream_hi_(static_cast<uint32_t>(stream >> 32)) {}

    uint32_t next_u32() {
        if (pos_ == 4) {
            fill_block();
            pos_ = 0;
        }
        return block_[pos_++];
    }

    uint64_t next_u64() {
        const uint64_t lo = next_u32();
        return (static_cast<uint64_t>(next_u32()) << 32) | lo;
    }

    bool next_bit() { return next_u32() & 1u; }

    /// Uniform in [0,1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (pairs cached).
    double next_gauss() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite.
        const double u1 =
            static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * pi() * u2;
        cached_ = r * std::sin(t);
        have_cached_ = true;
        return r * std::cos(t);
    }

private:
    static double pi() { return 3.141592653589793238462643383279502884; }

    static uint32_t mul_hi(uint32_t a, uint32_t b) {
        return static_cast<uint32_t>(
            (static_cast<uint64_t>(a) * static_cast<uint64_t>(b)) >> 32);
    }

    void fill_block() {
        uint32_t x0 = static_cast<uint32_t>(counter_);
        uint32_t x1 = static_cast<uint32_t>(counter_ >> 32);
        uint32_t x2 = stream_lo_;
        uint32_t x3 = stream_hi_;
        uint32_t k0 = key0_;
        uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const uint32_t hi0 = mul_hi(x0, 0xD2511F53u);
            const uint32_t lo0 = x0 * 0xD2511F53u;
            const uint32_t hi1 = mul_hi(x2, 0xCD9E8D57u);
            const uint32_t lo1 = x2 * 0xCD9E8D57u;
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        block_[0] = x0;
        block_[1] = x1;
        block_[2] = x2;
        block_[3] = x3;
        ++counter_;
    }

    uint32_t key0_, key1_;
    uint32_t stream_lo_, stream_hi_;
    uint64_t counter_ = 0;
    uint32_t block_[4] = {0, 0, 0, 0};
    int pos_ = 4;
    double cached_ = 0;
    bool have_cached_ = false;
};

} // namespace polarpunct
