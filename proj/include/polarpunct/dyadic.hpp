#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polarpunct {

/// Exact probability value num / 2^k with 0 <= num <= 2^k, kept reduced
/// (num odd unless the value is 0). k is capped at 62 so numerators stay in
/// one word; arithmetic that would need more precision throws instead of
/// rounding. Covers the erasure recursion and word-error products exactly.
class Dyadic {
public:
    Dyadic() = default;

    static Dyadic from_ratio(uint64_t num, int k) {
        if (k < 0 || k > max_k)
            throw std::invalid_argument("dyadic: exponent out of range");
        if (num > (uint64_t{1} << k))
            throw std::invalid_argument("dyadic: value above one");
        Dyadic d;
        d.num_ = num;
        d.k_ = k;
        d.reduce();
        return d;
    }
    static Dyadic zero() { return {}; }
    static Dyadic one() { return from_ratio(1, 0); }

    uint64_t numerator() const { return num_; }
    int log2_denominator() const { return k_; }

    double to_double() const {
        return static_cast<double>(num_) /
               static_cast<double>(uint64_t{1} << k_);
    }

    /// Exact terminating decimal expansion, e.g. "0.4375".
    std::string to_decimal_string() const {
        std::string s = num_ >> k_ ? "1" : "0";
        uint64_t frac = k_ ? (num_ & ((uint64_t{1} << k_) - 1)) : 0;
        if (frac) {
            s += '.';
            while (frac) {
                const unsigned __int128 wide =
                    static_cast<unsigned __int128>(frac) * 10;
                s += static_cast<char>('0' + static_cast<int>(wide >> k_));
                frac = static_cast<uint64_t>(wide) &
                       ((uint64_t{1} << k_) - 1);
            }
        }
        return s;
    }

    Dyadic operator*(const Dyadic& o) const {
        unsigned __int128 p =
            static_cast<unsigned __int128>(num_) * o.num_;
        int k = k_ + o.k_;
        while (p != 0 && (p & 1) == 0 && k > 0) {
            p >>= 1;
            --k;
        }
        if (p == 0) k = 0;
        if (k > max_k)
            throw std::overflow_error("dyadic: precision exhausted");
        Dyadic d;
        d.num_ = static_cast<uint64_t>(p);
        d.k_ = k;
        return d;
    }

    /// 1 - x.
    Dyadic complement() const {
        Dyadic d;
        d.num_ = (uint64_t{1} << k_) - num_;
        d.k_ = k_;
        d.reduce();
        return d;
    }

    /// x / 2.
    Dyadic halve() const {
        if (num_ == 0) return {};
        if (k_ + 1 > max_k)
            throw std::overflow_error("dyadic: precision exhausted");
        Dyadic d;
        d.num_ = num_;
        d.k_ = k_ + 1;
        return d;
    }

    bool operator==(const Dyadic& o) const {
        return num_ == o.num_ && k_ == o.k_;
    }
    bool operator<(const Dyadic& o) const {
        const int k = k_ > o.k_ ? k_ : o.k_;
        return (num_ << (k - k_)) < (o.num_ << (k - o.k_));
    }

private:
    static constexpr int max_k = 62;

    void reduce() {
        while (num_ != 0 && (num_ & 1) == 0 && k_ > 0) {
            num_ >>= 1;
            --k_;
        }
        if (num_ == 0) k_ = 0;
    }

    uint64_t num_ = 0;
    int k_ = 0;
};

/// 1 - (1-a)(1-b): erasure out of a degraded (check) combination.
inline Dyadic check_erasure(const Dyadic& a, const Dyadic& b) {
    return (a.complement() * b.complement()).complement();
}

} // namespace polarpunct
