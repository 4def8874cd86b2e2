#include "polarpunct/sc_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace polarpunct {

void encode_word(std::vector<uint8_t>& bits) {
    const size_t n = bits.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("encode_word: length must be a power of two");
    for (size_t d = n >> 1; d != 0; d >>= 1)
        for (size_t base = 0; base < n; base += 2 * d)
            for (size_t j = base; j < base + d; ++j) bits[j] ^= bits[j + d];
}

std::vector<double> channel_llrs(const std::vector<uint8_t>& codeword,
                                 const ChannelModel& channel,
                                 const Pattern& punctured,
                                 const Pattern& shortened, CounterRng& rng) {
    const size_t n = codeword.size();
    if (punctured.size() != n || shortened.size() != n)
        throw std::invalid_argument("channel_llrs: length mismatch");
    if (!punctured.disjoint(shortened))
        throw std::invalid_argument(
            "channel_llrs: punctured and shortened positions overlap");
    std::vector<double> llrs(n, 0.0);
    for (uint32_t i = 0; i < n; ++i) {
        if (punctured.get(i)) continue;  // never transmitted, no evidence
        if (shortened.get(i)) {
            if (codeword[i] != 0)
                throw std::invalid_argument(
                    "channel_llrs: shortened position carries a nonzero bit");
            llrs[i] = llr_saturation;
            continue;
        }
        const double symbol = codeword[i] ? -1.0 : 1.0;
        if (channel.kind == ChannelModel::Kind::awgn) {
            const double y = symbol + std::sqrt(channel.param) * rng.next_gauss();
            llrs[i] = 2.0 * y / channel.param;
        } else {
            llrs[i] = rng.next_uniform() < channel.param
                          ? 0.0
                          : symbol * llr_saturation;
        }
    }
    return llrs;
}

ScDecoder::ScDecoder(int n, bool min_sum) : n_(n), min_sum_(min_sum) {
    if (n < 0 || n > Pattern::max_log2_length)
        throw std::invalid_argument("ScDecoder: log2 length out of range");
    llr_.resize(n + 1);
    bits_.resize(n + 1);
    for (int d = 0; d <= n; ++d) {
        llr_[d].resize(size_t{1} << (n - d));
        bits_[d].resize(size_t{1} << (n - d));
    }
    gamma_.resize(size_t{1} << n);
    data_.resize(size_t{1} << n);
}

namespace {

double check_llr(double a, double b, bool min_sum) {
    const double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    const double aa = std::fabs(a);
    const double ab = std::fabs(b);
    const double m = std::min(aa, ab);
    if (min_sum) return sign * m;
    return sign * m + std::log1p(std::exp(-(aa + ab))) -
           std::log1p(std::exp(-std::fabs(aa - ab)));
}

} // namespace

template <bool genie_mode>
void ScDecoder::run(int depth, size_t data_start) {
    const size_t m = size_t{1} << (n_ - depth);
    if (m == 1) {
        const double g = llr_[depth][0];
        gamma_[data_start] = g;
        uint8_t bit;
        if constexpr (genie_mode) {
            bit = (*true_data_)[data_start];
        } else if (!info_->get(static_cast<uint32_t>(data_start))) {
            bit = 0;
        } else if (g > 0) {
            bit = 0;
        } else if (g < 0) {
            bit = 1;
        } else {
            bit = rng_->next_bit() ? 1 : 0;
        }
        data_[data_start] = bit;
        bits_[depth][0] = bit;
        return;
    }
    const size_t half = m >> 1;
    auto& cur = llr_[depth];
    auto& child = llr_[depth + 1];
    for (size_t j = 0; j < half; ++j)
        child[j] = check_llr(cur[j], cur[j + half], min_sum_);
    run<genie_mode>(depth + 1, data_start);
    auto& bcur = bits_[depth];
    auto& bchild = bits_[depth + 1];
    std::copy_n(bchild.begin(), half, bcur.begin());
    for (size_t j = 0; j < half; ++j) {
        const double flip = bcur[j] ? -1.0 : 1.0;
        child[j] = flip * cur[j] + cur[j + half];
    }
    run<genie_mode>(depth + 1, data_start + half);
    for (size_t j = 0; j < half; ++j) {
        bcur[j] ^= bchild[j];
        bcur[j + half] = bchild[j];
    }
}

DecodeResult ScDecoder::decode(const std::vector<double>& llrs,
                               const Pattern& info, CounterRng& rng) {
    if (llrs.size() != size() || info.size() != size())
        throw std::invalid_argument("ScDecoder: length mismatch");
    llr_[0] = llrs;
    info_ = &info;
    rng_ = &rng;
    run<false>(0, 0);
    return {data_, gamma_};
}

std::vector<double> ScDecoder::genie(const std::vector<double>& llrs,
                                     const std::vector<uint8_t>& true_data) {
    if (llrs.size() != size() || true_data.size() != size())
        throw std::invalid_argument("ScDecoder: length mismatch");
    llr_[0] = llrs;
    true_data_ = &true_data;
    run<true>(0, 0);
    return gamma_;
}

void wilson_interval(uint64_t successes, uint64_t trials, double& low,
                     double& high) {
    if (trials == 0) {
        low = 0.0;
        high = 1.0;
        return;
    }
    const double z = 1.959963984540054;
    const double nn = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    low = std::max(0.0, center - half);
    high = std::min(1.0, center + half);
    // The exact endpoints at the boundaries; the formula only leaves
    // cancellation dust there.
    if (successes == 0) low = 0.0;
    if (successes == trials) high = 1.0;
}

WerEstimate monte_carlo_wer(const Pattern& punctured, const Pattern& shortened,
                            const Pattern& info, const McConfig& config) {
    const size_t n_pos = punctured.size();
    if (shortened.size() != n_pos || info.size() != n_pos)
        throw std::invalid_argument("monte_carlo_wer: length mismatch");
    if (config.max_words == 0 || config.max_errors == 0)
        throw std::invalid_argument("monte_carlo_wer: word/error budgets must be positive");
    const int n = punctured.n();

    constexpr uint64_t batch_words = 4096;
    std::atomic<uint64_t> batch_errors{0};
    uint64_t words_done = 0;
    uint64_t errors = 0;

    // Stopping is evaluated only between batches; inside a batch every word
    // is simulated unconditionally, so the word count never depends on the
    // order in which workers finish.
    while (words_done < config.max_words && errors < config.max_errors) {
        const uint64_t this_batch =
            std::min(batch_words, config.max_words - words_done);
        batch_errors.store(0);
        auto simulate_word = [&](uint64_t w, ScDecoder& decoder,
                                 std::vector<uint8_t>& data,
                                 std::vector<uint8_t>& coded) {
            CounterRng rng(config.seed, w);
            std::fill(data.begin(), data.end(), uint8_t{0});
            if (!config.all_zero)
                for (uint32_t i = 0; i < n_pos; ++i)
                    if (info.get(i)) data[i] = rng.next_bit() ? 1 : 0;
            coded = data;
            encode_word(coded);
            const std::vector<double> llrs =
                channel_llrs(coded, config.channel, punctured, shortened, rng);
            const DecodeResult decoded = decoder.decode(llrs, info, rng);
            for (uint32_t i = 0; i < n_pos; ++i)
                if (info.get(i) && decoded.data[i] != data[i]) {
                    batch_errors.fetch_add(1);
                    return;
                }
        };
        if (config.workers <= 1) {
            ScDecoder decoder(n, config.min_sum);
            std::vector<uint8_t> data(n_pos), coded(n_pos);
            for (uint64_t w = words_done; w < words_done + this_batch; ++w)
                simulate_word(w, decoder, data, coded);
        } else {
            std::atomic<uint64_t> next{words_done};
            const uint64_t end = words_done + this_batch;
            auto body = [&] {
                ScDecoder decoder(n, config.min_sum);
                std::vector<uint8_t> data(n_pos), coded(n_pos);
                for (uint64_t w = next.fetch_add(1); w < end;
                     w = next.fetch_add(1))
                    simulate_word(w, decoder, data, coded);
            };
            std::vector<std::thread> pool;
            const size_t nthreads = static_cast<size_t>(
                std::min<uint64_t>(config.workers, this_batch));
            pool.reserve(nthreads);
            for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(body);
            for (auto& t : pool) t.join();
        }
        errors += batch_errors.load();
        words_done += this_batch;
    }

    WerEstimate est;
    est.words = words_done;
    est.errors = errors;
    est.wer = static_cast<double>(errors) / static_cast<double>(words_done);
    wilson_interval(errors, words_done, est.ci_low, est.ci_high);
    est.seed = config.seed;
    return est;
}

std::vector<double> genie_error_rates(const Pattern& punctured,
                                      const ChannelModel& channel,
                                      uint64_t words, uint64_t seed,
                                      bool all_zero, int workers) {
    if (words == 0)
        throw std::invalid_argument("genie_error_rates: need at least one word");
    const size_t n_pos = punctured.size();
    const int n = punctured.n();
    const Pattern no_shortening(n);
    std::vector<std::atomic<uint64_t>> counts(n_pos);
    for (auto& c : counts) c.store(0);

    auto simulate_word = [&](uint64_t w, ScDecoder& decoder,
                             std::vector<uint8_t>& data,
                             std::vector<uint8_t>& coded) {
        CounterRng rng(seed, w);
        std::fill(data.begin(), data.end(), uint8_t{0});
        if (!all_zero)
            for (size_t i = 0; i < n_pos; ++i)
                data[i] = rng.next_bit() ? 1 : 0;
        coded = data;
        encode_word(coded);
        const std::vector<double> llrs =
            channel_llrs(coded, channel, punctured, no_shortening, rng);
        const std::vector<double> gamma = decoder.genie(llrs, data);
        for (size_t i = 0; i < n_pos; ++i) {
            const bool wrong = gamma[i] == 0.0
                                   ? rng.next_bit()
                                   : (gamma[i] < 0.0) != (data[i] != 0);
            if (wrong) counts[i].fetch_add(1);
        }
    };
    if (workers <= 1) {
        ScDecoder decoder(n);
        std::vector<uint8_t> data(n_pos), coded(n_pos);
        for (uint64_t w = 0; w < words; ++w)
            simulate_word(w, decoder, data, coded);
    } else {
        std::atomic<uint64_t> next{0};
        auto body = [&] {
            ScDecoder decoder(n);
            std::vector<uint8_t> data(n_pos), coded(n_pos);
            for (uint64_t w = next.fetch_add(1); w < words;
                 w = next.fetch_add(1))
                simulate_word(w, decoder, data, coded);
        };
        std::vector<std::thread> pool;
        const size_t nthreads =
            static_cast<size_t>(std::min<uint64_t>(workers, words));
        pool.reserve(nthreads);
        for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }

    std::vector<double> rates(n_pos);
    for (size_t i = 0; i < n_pos; ++i)
        rates[i] = static_cast<double>(counts[i].load()) /
                   static_cast<double>(words);
    return rates;
}

} // namespace polarpunct
