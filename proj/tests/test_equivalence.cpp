#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "polarpunct/equivalence.hpp"
#include "polarpunct/erasure.hpp"
#include "polarpunct/pattern_io.hpp"

using namespace polarpunct;

namespace {

Pattern random_pattern(int n, std::mt19937& rng) {
    Pattern p(n);
    std::bernoulli_distribution coin(0.5);
    for (size_t i = 0; i < p.size(); ++i) p.set(i, coin(rng));
    return p;
}

std::vector<uint64_t> orbit_words(const Pattern& p) {
    std::vector<uint64_t> w;
    for (const Pattern& q : pattern_orbit(p)) w.push_back(q.words()[0]);
    std::sort(w.begin(), w.end());
    return w;
}

} // namespace

TEST_CASE("elementary block swaps are involutions that move whole blocks") {
    const Pattern p = parse_pattern(3, "10110100");
    const Pattern swapped = apply_elementary(p, 4, 1);  // blocks [4,6) and [6,8)
    CHECK(to_bit_string(swapped) == "10110001");
    CHECK(apply_elementary(swapped, 4, 1) == p);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const Pattern q = random_pattern(4, rng);
        for (int j = 0; j < 4; ++j)
            for (size_t k = 0; k < 16; k += size_t{2} << j) {
                const Pattern r = apply_elementary(q, k, j);
                CHECK(r.weight() == q.weight());
                CHECK(apply_elementary(r, k, j) == q);
            }
    }
    CHECK_THROWS_AS(apply_elementary(p, 2, 1), std::invalid_argument);
}

TEST_CASE("vector overload applies the same permutation") {
    std::mt19937 rng(4);
    const Pattern p = random_pattern(3, rng);
    std::vector<double> v(8);
    for (size_t i = 0; i < 8; ++i) v[i] = p.get(i) ? 1.0 : 0.0;
    apply_elementary_inplace(v, 4, 1);
    const Pattern q = apply_elementary(p, 4, 1);
    for (size_t i = 0; i < 8; ++i) CHECK(v[i] == (q.get(i) ? 1.0 : 0.0));
}

TEST_CASE("every length-8 class has exactly one primitive, the canonical one") {
    std::set<uint64_t> seen;
    for (uint64_t bits = 0; bits < 256; ++bits) {
        const Pattern p = Pattern::from_word(3, bits);
        CHECK(is_primitive(p) == primitive_recursive_test(p));
        const Pattern c = canonical_pattern(p);
        CHECK(is_primitive(c));
        CHECK(canonical_pattern(c) == c);
        if (seen.count(bits)) continue;
        const std::vector<Pattern> orbit = pattern_orbit(p);
        int primitives = 0;
        const Pattern rc = apply_bit_reversal(c);
        for (const Pattern& q : orbit) {
            seen.insert(q.words()[0]);
            CHECK(canonical_pattern(q) == c);
            CHECK(q.weight() == p.weight());
            if (is_primitive(q)) ++primitives;
            // The canonical member maximizes the bit-reversed word lexically.
            CHECK(lex_compare(rc, apply_bit_reversal(q)) >= 0);
        }
        CHECK(primitives == 1);
        CHECK(std::count(orbit.begin(), orbit.end(), p) == 1);
    }
    CHECK(seen.size() == 256);
}

TEST_CASE("class membership is symmetric between members") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Pattern p = random_pattern(3, rng);
        const std::vector<Pattern> orbit = pattern_orbit(p);
        const auto reference = orbit_words(p);
        for (const Pattern& q : orbit) CHECK(orbit_words(q) == reference);
    }
}

TEST_CASE("primitive tests agree at length 64") {
    std::mt19937 rng(10);
    int primitive_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Pattern p = random_pattern(6, rng);
        if (trial % 2 == 0) p = canonical_pattern(p);
        if (is_primitive(p)) ++primitive_seen;
        CHECK(is_primitive(p) == primitive_recursive_test(p));
        CHECK(canonical_pattern(canonical_pattern(p)) == canonical_pattern(p));
    }
    CHECK(primitive_seen >= 100);
}

TEST_CASE("oversized classes raise instead of growing unbounded") {
    Pattern p(5);
    p.set(1, true);  // a lone bit reaches many positions under block swaps
    CHECK_THROWS_AS(pattern_orbit(p, 2), OrbitOverflowError);
    CHECK(pattern_orbit(Pattern(5), 1).size() == 1);  // all-zero class is itself
}
