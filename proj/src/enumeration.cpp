#include "polarpunct/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <stdexcept>
#include <thread>

namespace polarpunct {

namespace {

// Lex keys for the bit-reversed domain: a length-M pattern R is stored with
// R(0) at bit M-1, so unsigned comparison of keys equals lex comparison and
// the concatenation (R0, R1) is (k0 << M/2) | k1.
uint64_t key_bit(uint64_t key, uint32_t length, uint32_t pos) {
    return (key >> (length - 1 - pos)) & 1u;
}

Pattern key_to_pattern(int n, uint64_t key) {
    Pattern p(n);
    const uint32_t len = 1u << n;
    for (uint32_t j = 0; j < len; ++j)
        if (key_bit(key, len, j)) p.set(bit_reversal(n, j), true);
    return p;
}

using WeightTable = std::vector<std::vector<uint64_t>>;  // [weight] -> keys

// Build the per-weight key lists for length 2^levels, pairing half-length
// entries under either the lex rule (second half <= first half; primitive
// patterns) or the subset rule (second half's support inside the first's;
// symmetric patterns). Lists come out sorted ascending.
WeightTable build_tables(int levels, size_t wmax, bool subset_rule,
                         const EnumLimits& limits, uint64_t& entries,
                         bool& capped) {
    WeightTable cur(std::min<size_t>(wmax, 1) + 1);
    cur[0] = {0};
    if (wmax >= 1) cur[1] = {1};
    entries += cur.size();
    for (int m = 1; m <= levels; ++m) {
        const uint32_t half = 1u << (m - 1);
        const size_t cap_w = std::min<size_t>(wmax, 1u << m);
        WeightTable next(cap_w + 1);
        for (size_t w = 0; w <= cap_w; ++w) {
            auto& out = next[w];
            for (size_t w0 = 0; w0 <= std::min<size_t>(w, cur.size() - 1); ++w0) {
                const size_t w1 = w - w0;
                if (w1 >= cur.size()) continue;
                if (subset_rule && w1 > w0) continue;  // subset forces w1 <= w0
                for (uint64_t k0 : cur[w0]) {
                    if (subset_rule) {
                        for (uint64_t k1 : cur[w1])
                            if ((k1 & ~k0) == 0) out.push_back((k0 << half) | k1);
                    } else {
                        const auto& lo = cur[w1];
                        auto end = std::upper_bound(lo.begin(), lo.end(), k0);
                        for (auto it = lo.begin(); it != end; ++it)
                            out.push_back((k0 << half) | *it);
                    }
                }
            }
            std::sort(out.begin(), out.end());
            entries += out.size();
            if (entries > limits.max_nodes) {
                capped = true;
                return next;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

void check_enum_args(int n, size_t weight) {
    if (n < 0 || n > Pattern::max_log2_length)
        throw std::invalid_argument("enumeration: log2 length out of range");
    if (weight > (size_t{1} << n))
        throw std::invalid_argument("enumeration: weight exceeds pattern length");
}

// ---------------------------------------------------------------------------
// Search tree over unions of generator rows with strictly decreasing indices.
//
// The incremental weight of candidate row i against the chosen union U is
// |row(i)| - |row(i) /\ U|. Row intersections are rows of the AND of their
// indices, so the second term expands by inclusion-exclusion over AND-masks
// of the chosen subset; that array doubles per level, so past a fixed depth
// we switch to counting directly against the materialized union.
// ---------------------------------------------------------------------------

struct TreeWalker {
    static constexpr int ie_depth_limit = 12;

    int n;
    uint32_t len;
    uint64_t target;
    int max_order;
    EnumLimits limits;
    const std::function<void(const Pattern&, int)>* emit = nullptr;

    std::vector<uint32_t> chosen;
    std::vector<uint32_t> ie_masks;                // active: 2^depth entries
    std::vector<std::vector<uint64_t>> unions;     // [depth] -> support words
    std::vector<uint64_t> row_words;
    uint64_t nodes = 0;
    uint64_t emitted = 0;
    uint64_t total = 0;
    std::vector<uint64_t> by_order;
    bool capped = false;

    TreeWalker(int n_, uint64_t target_, int max_order_, const EnumLimits& lim)
        : n(n_), len(1u << n_), target(target_), max_order(max_order_),
          limits(lim) {
        const size_t words = (size_t{1} << n) <= 64 ? 1 : (size_t{1} << n) / 64;
        ie_masks.assign(size_t{1} << std::min(max_order_ > 0 ? max_order_ - 1 : 0,
                                              ie_depth_limit - 1),
                        0);
        ie_masks[0] = len - 1;
        unions.emplace_back(words, 0);
        row_words.assign(words, 0);
        by_order.assign(std::max(max_order_, 1), 0);
    }

    void fill_row(uint32_t i) {
        std::fill(row_words.begin(), row_words.end(), 0);
        uint64_t w = 1;
        uint32_t bits = 1;
        int b = 0;
        for (; b < n && bits < 64; ++b, bits <<= 1)
            if ((i >> b) & 1) w |= w << bits;
        row_words[0] = w;
        for (size_t words = 1; b < n; ++b, words <<= 1)
            if ((i >> b) & 1)
                std::copy_n(row_words.begin(), words, row_words.begin() + words);
    }

    int64_t new_weight(uint32_t i, int depth) {
        if (depth <= ie_depth_limit) {
            const uint32_t nmask = 1u << (depth - 1);
            int64_t wcp = 0;
            for (uint32_t s = 0; s < nmask; ++s) {
                const int64_t term = int64_t{1} << std::popcount(i & ie_masks[s]);
                wcp += (std::popcount(s) & 1) ? -term : term;
            }
            return wcp;
        }
        fill_row(i);
        const auto& u = unions.back();
        int64_t wcp = 0;
        for (size_t w = 0; w < u.size(); ++w)
            wcp += std::popcount(row_words[w] & ~u[w]);
        return wcp;
    }

    void emit_current(uint32_t i, int depth) {
        if (emitted >= limits.max_emitted) {
            capped = true;
            return;
        }
        ++total;
        ++by_order[depth - 1];
        ++emitted;
        if (emit) {
            fill_row(i);
            Pattern p(n);
            const auto& u = unions.back();
            for (size_t w = 0; w < u.size(); ++w) {
                uint64_t bits = u[w] | row_words[w];
                while (bits) {
                    const int b = std::countr_zero(bits);
                    p.set(static_cast<uint32_t>(w * 64 + b), true);
                    bits &= bits - 1;
                }
            }
            (*emit)(p, depth);
        }
    }

    // Scan candidates first..stop (descending) at depth chosen.size()+1.
    // Returns false once a cap fires; the walk unwinds immediately.
    bool scan(uint32_t first, uint32_t stop, uint64_t used) {
        const int depth = static_cast<int>(chosen.size()) + 1;
        const uint64_t rem = target - used;
        for (uint32_t i = first;; --i) {
            if (++nodes > limits.max_nodes) {
                capped = true;
                return false;
            }
            const uint64_t full = uint64_t{1} << std::popcount(i);
            if (full >= rem || depth < max_order) {
                const int64_t wcp = new_weight(i, depth);
                if (wcp > 0 && static_cast<uint64_t>(wcp) <= rem) {
                    if (static_cast<uint64_t>(wcp) == rem) {
                        emit_current(i, depth);
                        if (capped) return false;
                    } else if (depth < max_order && i > 0) {
                        descend(i);
                        const bool ok = scan(i - 1, 0, used + wcp);
                        ascend();
                        if (!ok) return false;
                    }
                }
            }
            if (i == stop) break;
        }
        return true;
    }

    void descend(uint32_t i) {
        const int depth = static_cast<int>(chosen.size()) + 1;
        if (depth < ie_depth_limit) {
            const uint32_t nmask = 1u << (depth - 1);
            for (uint32_t s = 0; s < nmask; ++s)
                ie_masks[nmask + s] = ie_masks[s] & i;
        }
        fill_row(i);
        unions.push_back(unions.back());
        auto& u = unions.back();
        for (size_t w = 0; w < u.size(); ++w) u[w] |= row_words[w];
        chosen.push_back(i);
    }

    void ascend() {
        chosen.pop_back();
        unions.pop_back();
    }
};

} // namespace

EnumStatus enumerate_primitive(int n, size_t weight,
                               const std::function<void(const Pattern&)>& emit,
                               const EnumLimits& limits) {
    check_enum_args(n, weight);
    if (n > 6)
        throw std::invalid_argument(
            "enumerate_primitive: length above 64 not supported");
    uint64_t nodes = 0;
    uint64_t emitted = 0;
    if (n == 0) {
        if (limits.max_emitted == 0) return EnumStatus::cap_hit;
        Pattern p(0);
        p.set(0, weight == 1);
        emit(p);
        return EnumStatus::complete;
    }
    bool capped = false;
    WeightTable half = build_tables(n - 1, weight, false, limits, nodes, capped);
    if (capped) return EnumStatus::cap_hit;
    const uint32_t half_len = 1u << (n - 1);
    for (size_t w0 = 0; w0 <= weight; ++w0) {
        const size_t w1 = weight - w0;
        if (w0 >= half.size() || w1 >= half.size()) continue;
        const auto& lo = half[w1];
        for (uint64_t k0 : half[w0]) {
            auto end = std::upper_bound(lo.begin(), lo.end(), k0);
            for (auto it = lo.begin(); it != end; ++it) {
                if (++nodes > limits.max_nodes || emitted >= limits.max_emitted)
                    return EnumStatus::cap_hit;
                emit(key_to_pattern(n, (k0 << half_len) | *it));
                ++emitted;
            }
        }
    }
    return EnumStatus::complete;
}

EnumStatus enumerate_symmetric_all(int n, size_t weight,
                                   const std::function<void(const Pattern&)>& emit,
                                   const EnumLimits& limits) {
    check_enum_args(n, weight);
    if (n > 6) {
        // Order never exceeds the weight, so the search tree covers everything.
        return search_tree_symmetric(
            n, weight, static_cast<int>(std::max<size_t>(weight, 1)),
            [&](const Pattern& p, int) { emit(p); }, limits);
    }
    uint64_t nodes = 0;
    uint64_t emitted = 0;
    if (n == 0) {
        if (limits.max_emitted == 0) return EnumStatus::cap_hit;
        Pattern p(0);
        p.set(0, weight == 1);
        emit(p);
        return EnumStatus::complete;
    }
    bool capped = false;
    WeightTable half = build_tables(n - 1, weight, true, limits, nodes, capped);
    if (capped) return EnumStatus::cap_hit;
    const uint32_t half_len = 1u << (n - 1);
    for (size_t w0 = weight; w0 + w0 >= weight; --w0) {
        const size_t w1 = weight - w0;
        if (w0 < half.size() && w1 < half.size()) {
            for (uint64_t k0 : half[w0]) {
                for (uint64_t k1 : half[w1]) {
                    if (++nodes > limits.max_nodes) return EnumStatus::cap_hit;
                    if ((k1 & ~k0) != 0) continue;
                    if (emitted >= limits.max_emitted) return EnumStatus::cap_hit;
                    emit(key_to_pattern(n, (k0 << half_len) | k1));
                    ++emitted;
                }
            }
        }
        if (w0 == 0) break;
    }
    return EnumStatus::complete;
}

EnumStatus search_tree_symmetric(
    int n, size_t target_weight, int max_order,
    const std::function<void(const Pattern&, int)>& emit,
    const EnumLimits& limits) {
    check_enum_args(n, target_weight);
    if (max_order < 0)
        throw std::invalid_argument("search_tree_symmetric: negative order bound");
    if (target_weight == 0) {
        if (limits.max_emitted == 0) return EnumStatus::cap_hit;
        emit(Pattern(n), 0);
        return EnumStatus::complete;
    }
    if (max_order == 0) return EnumStatus::complete;
    TreeWalker walker(n, target_weight, max_order, limits);
    walker.emit = &emit;
    walker.scan((1u << n) - 1, 0, 0);
    return walker.capped ? EnumStatus::cap_hit : EnumStatus::complete;
}

SearchTreeCount count_search_tree_symmetric(int n, size_t target_weight,
                                            int max_order, int workers,
                                            const EnumLimits& limits) {
    check_enum_args(n, target_weight);
    if (max_order < 0)
        throw std::invalid_argument("search_tree_symmetric: negative order bound");
    SearchTreeCount out;
    out.by_order.assign(std::max(max_order, 1), 0);
    if (target_weight == 0) {
        out.total = 1;
        if (out.total > limits.max_emitted) out.status = EnumStatus::cap_hit;
        return out;
    }
    if (max_order == 0) return out;

    // Branch b roots the walk at top-level row len-1-b. Work is split over
    // branches in fixed-size waves; caps are evaluated against the summed
    // totals at wave boundaries only, so the result (including a truncated
    // one) is the same for every worker count.
    const uint32_t len = 1u << n;
    constexpr uint32_t wave_size = 64;
    std::vector<SearchTreeCount> branch(wave_size);
    for (uint32_t wave = 0; wave < len; wave += wave_size) {
        const uint32_t count = std::min(wave_size, len - wave);
        auto run_branch = [&](uint32_t b) {
            TreeWalker w(n, target_weight, max_order, limits);
            const uint32_t root = len - 1 - (wave + b);
            w.scan(root, root, 0);
            SearchTreeCount r;
            r.total = w.total;
            r.by_order = w.by_order;
            r.nodes = w.nodes;
            r.status = w.capped ? EnumStatus::cap_hit : EnumStatus::complete;
            branch[b] = std::move(r);
        };
        if (workers <= 1 || count == 1) {
            for (uint32_t b = 0; b < count; ++b) run_branch(b);
        } else {
            std::atomic<uint32_t> next{0};
            auto worker = [&] {
                for (uint32_t b = next.fetch_add(1); b < count;
                     b = next.fetch_add(1))
                    run_branch(b);
            };
            std::vector<std::thread> pool;
            const uint32_t nthreads =
                std::min<uint32_t>(static_cast<uint32_t>(workers), count);
            pool.reserve(nthreads);
            for (uint32_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        bool capped = false;
        for (uint32_t b = 0; b < count; ++b) {
            out.total += branch[b].total;
            out.nodes += branch[b].nodes;
            for (size_t k = 0; k < out.by_order.size(); ++k)
                out.by_order[k] += branch[b].by_order[k];
            if (branch[b].status == EnumStatus::cap_hit) capped = true;
        }
        if (capped || out.nodes > limits.max_nodes ||
            out.total > limits.max_emitted) {
            out.status = EnumStatus::cap_hit;
            return out;
        }
    }
    return out;
}

} // namespace polarpunct
