#pragma once

#include <cstdint>
#include <vector>

#include "polarpunct/channel.hpp"
#include "polarpunct/pattern.hpp"
#include "polarpunct/rng.hpp"

namespace polarpunct {

/// LLR magnitude representing a known bit (erasure-free hard evidence).
constexpr double llr_saturation = 40.0;

/// In-place butterfly transform of a length-2^n bit word: data word in,
/// codeword out (the transform is its own inverse).
void encode_word(std::vector<uint8_t>& bits);

/// Channel LLRs for a transmitted codeword. Punctured positions are never
/// sent and contribute LLR 0; shortened positions hold a known zero bit and
/// contribute +saturation; the rest see BPSK (bit b -> 1-2b) through the
/// channel: AWGN llr = 2y/sigma2, BEC llr in {0, +-saturation}. One rng draw
/// is consumed per transmitted position, in position order.
std::vector<double> channel_llrs(const std::vector<uint8_t>& codeword,
                                 const ChannelModel& channel,
                                 const Pattern& punctured,
                                 const Pattern& shortened, CounterRng& rng);

struct DecodeResult {
    std::vector<uint8_t> data;   // decoded bits, zeros at frozen positions
    std::vector<double> gamma;   // decision LLR at every data position
};

/// Successive-cancellation decoder with reusable internal buffers. The check
/// combination is the exact tanh rule in a numerically stable form unless
/// min_sum is set. Zero decision LLRs at information positions resolve by a
/// fair coin from the rng.
class ScDecoder {
public:
    explicit ScDecoder(int n, bool min_sum = false);

    int n() const { return n_; }
    size_t size() const { return size_t{1} << n_; }

    DecodeResult decode(const std::vector<double>& llrs, const Pattern& info,
                        CounterRng& rng);

    /// Genie-aided pass: g-steps use the true data bits; returns every
    /// decision LLR. No randomness is consumed.
    std::vector<double> genie(const std::vector<double>& llrs,
                              const std::vector<uint8_t>& true_data);

private:
    template <bool genie_mode>
    void run(int depth, size_t data_start);

    int n_;
    bool min_sum_;
    std::vector<std::vector<double>> llr_;     // per depth
    std::vector<std::vector<uint8_t>> bits_;   // per depth, re-encoded segment
    std::vector<double> gamma_;
    std::vector<uint8_t> data_;
    const Pattern* info_ = nullptr;
    const std::vector<uint8_t>* true_data_ = nullptr;
    CounterRng* rng_ = nullptr;
};

struct WerEstimate {
    uint64_t words = 0;
    uint64_t errors = 0;
    double wer = 0;
    double ci_low = 0;
    double ci_high = 0;
    uint64_t seed = 0;
};

struct McConfig {
    ChannelModel channel;
    uint64_t max_words = 0;
    uint64_t max_errors = 1;
    uint64_t seed = 0;
    bool all_zero = false;  // transmit all-zero data instead of random bits
    bool min_sum = false;
    int workers = 1;
};

/// Word error rate of SC decoding under the given puncturing/shortening and
/// information set. Word w draws its data, noise, and tie-breaks from stream
/// (seed, w); stopping is decided at fixed batch boundaries, so the estimate
/// is identical for every worker count.
WerEstimate monte_carlo_wer(const Pattern& punctured, const Pattern& shortened,
                            const Pattern& info, const McConfig& config);

/// Empirical per-position error rates of the genie-aided decoder (hard
/// decision against the true bit; zero LLRs resolved by a fair coin), over
/// exactly `words` words.
std::vector<double> genie_error_rates(const Pattern& punctured,
                                      const ChannelModel& channel,
                                      uint64_t words, uint64_t seed,
                                      bool all_zero = true, int workers = 1);

/// Wilson 95% confidence interval for a binomial proportion.
void wilson_interval(uint64_t successes, uint64_t trials, double& low,
                     double& high);

} // namespace polarpunct
