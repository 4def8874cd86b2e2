#pragma once

#include <cstdint>
#include <vector>

#include "polarpunct/channel.hpp"
#include "polarpunct/dyadic.hpp"
#include "polarpunct/pattern.hpp"

namespace polarpunct {

/// Per-data-position reliability profile. For BEC, reliability[i] is the
/// erasure probability of bit-channel i; for AWGN it is the mean of the
/// Gaussian-approximated LLR. p_ga[i] is the genie-aided error probability
/// (erasures resolved by a fair coin; Q(sqrt(m/2)) under the approximation).
struct DeResult {
    ChannelModel channel;
    std::vector<double> reliability;
    std::vector<double> p_ga;
};

/// Exact BEC bit-channel erasure probabilities under puncturing (punctured
/// coded positions start at erasure probability one).
std::vector<Dyadic> bec_erasure_exact(const Pattern& punct, const Dyadic& eps);

DeResult bec_de(const Pattern& punct, double eps);
DeResult ga_de(const Pattern& punct, double sigma2);
DeResult run_de(const Pattern& punct, const ChannelModel& channel);

/// Variants with shortened coded positions (known zeros at the decoder):
/// under BEC they start at erasure probability zero, under GA at infinite
/// LLR mean. The punctured and shortened sets must be disjoint.
DeResult bec_de(const Pattern& punct, const Pattern& shortened, double eps);
DeResult ga_de(const Pattern& punct, const Pattern& shortened, double sigma2);
DeResult run_de(const Pattern& punct, const Pattern& shortened,
                const ChannelModel& channel);

/// Standard two-piece GA transform of an LLR mean (continuous across the
/// splice at m = 10; exactly 1 at m = 0) and its monotone inverse
/// (relative accuracy 1e-12; exactly 0 at y >= 1).
double ga_phi(double m);
double ga_phi_inv(double y);

/// Upper-tail probability of a standard normal.
double q_function(double x);

/// The K most reliable data positions (smallest p_ga), never inside
/// `excluded`; ties broken toward the larger index. Throws if fewer than K
/// positions are available.
Pattern select_information(const DeResult& de, size_t k, const Pattern& excluded);

/// 1 - prod_{i in info} (1 - p_ga[i]).
double wer_ga(const DeResult& de, const Pattern& info);

struct ThresholdResult {
    double sigma2 = 0;
    double snr_db = 0;
};

/// Largest AWGN noise variance in [1e-3, 100] at which the code still meets
/// wer_ga <= eta, with the information set re-selected at every probe
/// (punctured-forced positions excluded). Bisection to within tol, with a
/// bracket re-check that falls back to a downward grid scan if the pass/fail
/// boundary turns out not to be monotone. Throws if even the quietest end of
/// the range fails.
ThresholdResult noise_threshold(const Pattern& punct, size_t k, double eta,
                                double tol = 1e-4);

enum class Objective { max_threshold, min_wer };

struct OptimizeConfig {
    size_t k = 0;
    Objective objective = Objective::min_wer;
    double eta = 1e-4;     // max_threshold: target word error rate
    double tol = 1e-4;     // max_threshold: bisection tolerance
    double sigma2 = 0.5;   // min_wer: operating noise variance
    int workers = 1;
};

struct OptimizeResult {
    Pattern pattern{0};
    Pattern info{0};
    double score = 0;      // threshold sigma2 (larger wins) or WER (smaller wins)
    uint64_t candidates_evaluated = 0;
};

/// Evaluate every candidate pattern and return the best under the objective.
/// Ties on score go to the lex-largest bit-reversed pattern, then to the
/// earliest candidate. Candidates are scored in fixed-size chunks handed to
/// a worker pool; the reduction is independent of scheduling, so the result
/// is identical for any worker count.
OptimizeResult optimize_pattern(const std::vector<Pattern>& candidates,
                                const OptimizeConfig& config);

} // namespace polarpunct
