#include "polarpunct/density_evolution.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "polarpunct/erasure.hpp"

namespace polarpunct {

namespace {

// One polarization pass over per-position statistics, pairing (j, j+d) with
// the same schedule as the encoder: the first half of each block carries the
// degraded (check) combination, the second half the upgraded (variable) one.
template <class T, class Check, class Var>
void propagate(std::vector<T>& v, Check check, Var var) {
    const size_t n = v.size();
    for (size_t d = n >> 1; d != 0; d >>= 1)
        for (size_t base = 0; base < n; base += 2 * d)
            for (size_t j = base; j < base + d; ++j) {
                const T a = v[j];
                const T b = v[j + d];
                v[j] = check(a, b);
                v[j + d] = var(a, b);
            }
}

constexpr double phi_pow_scale = 0.4527;
constexpr double phi_pow_exp = 0.86;
constexpr double phi_offset = 0.0218;
const double pi_value = std::acos(-1.0);

double phi_tail_raw(double m) {
    return std::sqrt(pi_value / m) * std::exp(-0.25 * m) *
           (1.0 - 10.0 / (7.0 * m));
}

// Mean below which the exponential piece would exceed 1; phi clamps to 1 there.
const double phi_clamp_m =
    std::pow(phi_offset / phi_pow_scale, 1.0 / phi_pow_exp);
const double phi_splice_y =
    std::exp(-phi_pow_scale * std::pow(10.0, phi_pow_exp) + phi_offset);
// Rescales the large-mean tail so the two pieces agree at the splice m = 10.
const double phi_tail_scale = phi_splice_y / phi_tail_raw(10.0);

double log_phi_tail(double m) {
    return std::log(phi_tail_scale) + 0.5 * (std::log(pi_value) - std::log(m)) -
           0.25 * m + std::log1p(-10.0 / (7.0 * m));
}

double log_phi_tail_deriv(double m) {
    return -0.5 / m - 0.25 + (10.0 / (7.0 * m * m)) / (1.0 - 10.0 / (7.0 * m));
}

// Check-node mean update. Zero means are absorbing (phi(0) = 1), matching the
// structural erasure propagation, and an infinite mean (a known bit) passes
// the other input through exactly; a product that underflows to zero means
// both inputs are enormous, where the weaker input is a tight stand-in.
double check_mean(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    if (std::isinf(a)) return b;
    if (std::isinf(b)) return a;
    const double ya = ga_phi(a);
    const double yb = ga_phi(b);
    const double y = ya + yb - ya * yb;
    if (y <= 0.0) return std::min(a, b);
    return ga_phi_inv(y);
}

std::vector<double> error_from_means(const std::vector<double>& means) {
    std::vector<double> p(means.size());
    for (size_t i = 0; i < means.size(); ++i)
        p[i] = q_function(std::sqrt(means[i] / 2.0));
    return p;
}

} // namespace

double ga_phi(double m) {
    if (m <= phi_clamp_m) return 1.0;
    if (m < 10.0)
        return std::exp(-phi_pow_scale * std::pow(m, phi_pow_exp) + phi_offset);
    return phi_tail_scale * phi_tail_raw(m);
}

double ga_phi_inv(double y) {
    if (y >= 1.0) return 0.0;
    if (y <= 0.0) return std::numeric_limits<double>::infinity();
    if (y > phi_splice_y)
        return std::pow((phi_offset - std::log(y)) / phi_pow_scale,
                        1.0 / phi_pow_exp);
    // Tail piece: solve log phi(m) = log y, bracketed Newton with bisection
    // fallback. log phi is strictly decreasing for m >= 10.
    const double ly = std::log(y);
    double lo = 10.0;
    double hi = 20.0;
    while (log_phi_tail(hi) > ly) hi *= 2.0;
    double m = std::clamp(-4.0 * (ly - std::log(phi_tail_scale) -
                                  0.5 * std::log(pi_value)),
                          lo, hi);
    for (int round = 0; round < 2; ++round)
        m = std::clamp(-4.0 * (ly - std::log(phi_tail_scale) -
                               0.5 * std::log(pi_value) + 0.5 * std::log(m) -
                               std::log1p(-10.0 / (7.0 * m))),
                       lo, hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double h = log_phi_tail(m) - ly;
        if (h == 0.0) return m;
        if (h > 0.0)
            lo = m;
        else
            hi = m;
        if (hi - lo <= 1e-13 * lo) break;
        const double step = m - h / log_phi_tail_deriv(m);
        m = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

double q_function(double x) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return 0.5 * std::erfc(x * inv_sqrt2);
}

std::vector<Dyadic> bec_erasure_exact(const Pattern& punct, const Dyadic& eps) {
    std::vector<Dyadic> e(punct.size());
    for (size_t i = 0; i < e.size(); ++i)
        e[i] = punct.get(static_cast<uint32_t>(i)) ? Dyadic::one() : eps;
    propagate(
        e, [](const Dyadic& a, const Dyadic& b) { return check_erasure(a, b); },
        [](const Dyadic& a, const Dyadic& b) { return a * b; });
    return e;
}

DeResult bec_de(const Pattern& punct, double eps) {
    return bec_de(punct, Pattern(punct.n()), eps);
}

DeResult ga_de(const Pattern& punct, double sigma2) {
    return ga_de(punct, Pattern(punct.n()), sigma2);
}

DeResult run_de(const Pattern& punct, const ChannelModel& channel) {
    return run_de(punct, Pattern(punct.n()), channel);
}

DeResult bec_de(const Pattern& punct, const Pattern& shortened, double eps) {
    if (!punct.disjoint(shortened))
        throw std::invalid_argument("bec_de: punctured and shortened overlap");
    DeResult r;
    r.channel = ChannelModel::bec(eps);
    r.reliability.assign(punct.size(), eps);
    for (size_t i = 0; i < r.reliability.size(); ++i) {
        if (punct.get(i)) r.reliability[i] = 1.0;
        else if (shortened.get(i)) r.reliability[i] = 0.0;
    }
    propagate(
        r.reliability, [](double a, double b) { return a + b - a * b; },
        [](double a, double b) { return a * b; });
    r.p_ga.resize(r.reliability.size());
    for (size_t i = 0; i < r.p_ga.size(); ++i) r.p_ga[i] = 0.5 * r.reliability[i];
    return r;
}

DeResult ga_de(const Pattern& punct, const Pattern& shortened, double sigma2) {
    if (!punct.disjoint(shortened))
        throw std::invalid_argument("ga_de: punctured and shortened overlap");
    DeResult r;
    r.channel = ChannelModel::awgn(sigma2);
    r.reliability.assign(punct.size(), 2.0 / sigma2);
    for (size_t i = 0; i < r.reliability.size(); ++i) {
        if (punct.get(i)) r.reliability[i] = 0.0;
        else if (shortened.get(i))
            r.reliability[i] = std::numeric_limits<double>::infinity();
    }
    propagate(r.reliability, check_mean,
              [](double a, double b) { return a + b; });
    r.p_ga = error_from_means(r.reliability);
    return r;
}

DeResult run_de(const Pattern& punct, const Pattern& shortened,
                const ChannelModel& channel) {
    return channel.kind == ChannelModel::Kind::bec
               ? bec_de(punct, shortened, channel.param)
               : ga_de(punct, shortened, channel.param);
}

Pattern select_information(const DeResult& de, size_t k,
                           const Pattern& excluded) {
    const size_t n_pos = de.p_ga.size();
    if (excluded.size() != n_pos)
        throw std::invalid_argument("select_information: length mismatch");
    std::vector<uint32_t> eligible;
    eligible.reserve(n_pos);
    for (uint32_t i = 0; i < n_pos; ++i)
        if (!excluded.get(i)) eligible.push_back(i);
    if (eligible.size() < k)
        throw std::invalid_argument(
            "select_information: not enough positions outside the excluded set");
    std::sort(eligible.begin(), eligible.end(), [&](uint32_t a, uint32_t b) {
        if (de.p_ga[a] != de.p_ga[b]) return de.p_ga[a] < de.p_ga[b];
        return a > b;
    });
    Pattern info(excluded.n());
    for (size_t j = 0; j < k; ++j) info.set(eligible[j], true);
    return info;
}

double wer_ga(const DeResult& de, const Pattern& info) {
    if (info.size() != de.p_ga.size())
        throw std::invalid_argument("wer_ga: length mismatch");
    double log_ok = 0.0;
    const auto& words = info.words();
    for (size_t w = 0; w < words.size(); ++w) {
        uint64_t bits = words[w];
        while (bits) {
            const size_t i = w * 64 + static_cast<size_t>(std::countr_zero(bits));
            log_ok += std::log1p(-de.p_ga[i]);
            bits &= bits - 1;
        }
    }
    return -std::expm1(log_ok);
}

namespace {

double wer_at(const Pattern& punct, const Pattern& excluded, size_t k,
              double sigma2) {
    const DeResult de = ga_de(punct, sigma2);
    return wer_ga(de, select_information(de, k, excluded));
}

} // namespace

ThresholdResult noise_threshold(const Pattern& punct, size_t k, double eta,
                                double tol) {
    if (!(eta > 0.0 && eta <= 1.0))
        throw std::invalid_argument("noise_threshold: eta outside (0,1]");
    if (!(tol > 0.0)) throw std::invalid_argument("noise_threshold: tol <= 0");
    const Pattern excluded = erasure_pattern(punct);
    if (punct.size() - excluded.weight() < k)
        throw std::invalid_argument(
            "noise_threshold: k exceeds the unforced positions");
    const double sigma2_min = 1e-3;
    const double sigma2_max = 100.0;
    auto passes = [&](double s2) {
        return wer_at(punct, excluded, k, s2) <= eta;
    };
    if (!passes(sigma2_min))
        throw std::runtime_error(
            "noise_threshold: target not met anywhere in the search range");
    if (passes(sigma2_max)) return {sigma2_max, snr_db(sigma2_max)};
    double lo = sigma2_min;
    double hi = sigma2_max;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid))
            lo = mid;
        else
            hi = mid;
    }
    // The bisection assumes pass/fail is monotone in the variance. Probe a
    // few points above the found edge; if any still passes, fall back to a
    // downward grid scan for the true largest passing variance.
    bool monotone = true;
    for (int j = 1; j <= 8 && monotone; ++j) {
        const double probe = std::min(lo + j * tol, sigma2_max);
        if (probe > lo && passes(probe)) monotone = false;
    }
    if (!monotone) {
        for (double s2 = sigma2_max; s2 >= sigma2_min; s2 -= tol)
            if (passes(s2)) return {s2, snr_db(s2)};
        throw std::runtime_error(
            "noise_threshold: grid scan found no passing variance");
    }
    return {lo, snr_db(lo)};
}

namespace {

struct Scored {
    bool valid = false;
    double score = 0;
    size_t index = 0;
    Pattern pattern{0};
    Pattern info{0};
};

bool beats(const Scored& a, const Scored& b, bool maximize) {
    if (!a.valid) return false;
    if (!b.valid) return true;
    if (a.score != b.score) return maximize ? a.score > b.score : a.score < b.score;
    const int c =
        lex_compare(apply_bit_reversal(a.pattern), apply_bit_reversal(b.pattern));
    if (c != 0) return c > 0;
    return a.index < b.index;
}

} // namespace

OptimizeResult optimize_pattern(const std::vector<Pattern>& candidates,
                                const OptimizeConfig& config) {
    if (candidates.empty())
        throw std::invalid_argument("optimize_pattern: empty candidate set");
    const bool maximize = config.objective == Objective::max_threshold;
    constexpr size_t chunk_size = 512;
    const size_t nchunks = (candidates.size() + chunk_size - 1) / chunk_size;
    std::vector<Scored> chunk_best(nchunks);

    auto evaluate = [&](size_t gi, const Scored& ladder) {
        Scored s;
        s.index = gi;
        s.pattern = candidates[gi];
        try {
            const Pattern excluded = erasure_pattern(s.pattern);
            if (config.objective == Objective::min_wer) {
                const DeResult de = ga_de(s.pattern, config.sigma2);
                s.info = select_information(de, config.k, excluded);
                s.score = wer_ga(de, s.info);
                s.valid = true;
            } else {
                // Cheap rejection: a candidate whose WER already misses the
                // target at the incumbent's threshold cannot beat it.
                if (ladder.valid &&
                    wer_at(s.pattern, excluded, config.k, ladder.score) >
                        config.eta)
                    return s;
                const ThresholdResult th =
                    noise_threshold(s.pattern, config.k, config.eta, config.tol);
                const DeResult de = ga_de(s.pattern, th.sigma2);
                s.info = select_information(de, config.k, excluded);
                s.score = th.sigma2;
                s.valid = true;
            }
        } catch (const std::exception&) {
            s.valid = false;
        }
        return s;
    };

    auto run_chunk = [&](size_t c) {
        Scored best;
        const size_t begin = c * chunk_size;
        const size_t end = std::min(begin + chunk_size, candidates.size());
        for (size_t gi = begin; gi < end; ++gi) {
            Scored s = evaluate(gi, best);
            if (beats(s, best, maximize)) best = std::move(s);
        }
        chunk_best[c] = std::move(best);
    };

    const int workers = std::max(config.workers, 1);
    if (workers == 1 || nchunks <= 1) {
        for (size_t c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t c = next.fetch_add(1); c < nchunks;
                 c = next.fetch_add(1))
                run_chunk(c);
        };
        std::vector<std::thread> pool;
        const size_t nthreads = std::min<size_t>(workers, nchunks);
        pool.reserve(nthreads);
        for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Scored best;
    for (size_t c = 0; c < nchunks; ++c)
        if (beats(chunk_best[c], best, maximize)) best = chunk_best[c];
    if (!best.valid)
        throw std::runtime_error("optimize_pattern: no candidate was evaluable");
    OptimizeResult out;
    out.pattern = best.pattern;
    out.info = best.info;
    out.score = best.score;
    out.candidates_evaluated = candidates.size();
    return out;
}

} // namespace polarpunct
