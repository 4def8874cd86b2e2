#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "polarpunct/enumeration.hpp"
#include "polarpunct/equivalence.hpp"
#include "polarpunct/erasure.hpp"
#include "polarpunct/pattern.hpp"

using namespace polarpunct;

namespace {

std::set<uint64_t> collect_words(int n, size_t weight,
                                 EnumStatus (*enumerator)(int, size_t,
                                                          const std::function<void(const Pattern&)>&,
                                                          const EnumLimits&)) {
    std::set<uint64_t> out;
    const EnumStatus st = enumerator(n, weight, [&](const Pattern& p) {
        CHECK(p.weight() == weight);
        CHECK(out.insert(p.words()[0]).second);  // no duplicates
    }, {});
    CHECK(st == EnumStatus::complete);
    return out;
}

} // namespace

TEST_CASE("primitive streams match the filtered brute force at small lengths") {
    for (int n = 0; n <= 3; ++n) {
        const uint64_t total = uint64_t{1} << (1u << n);
        for (size_t w = 0; w <= (size_t{1} << n); ++w) {
            std::set<uint64_t> expected;
            for (uint64_t bits = 0; bits < total; ++bits) {
                const Pattern p = Pattern::from_word(n, bits);
                if (p.weight() == w && is_primitive(p)) expected.insert(bits);
            }
            CHECK(collect_words(n, w, &enumerate_primitive) == expected);
        }
    }
    CHECK_THROWS_AS(enumerate_primitive(7, 3, [](const Pattern&) {}),
                    std::invalid_argument);
}

TEST_CASE("symmetric streams match the filtered brute force at small lengths") {
    for (int n = 0; n <= 3; ++n) {
        const uint64_t total = uint64_t{1} << (1u << n);
        for (size_t w = 0; w <= (size_t{1} << n); ++w) {
            std::set<uint64_t> expected;
            for (uint64_t bits = 0; bits < total; ++bits) {
                const Pattern p = Pattern::from_word(n, bits);
                if (p.weight() == w && is_symmetric(p)) expected.insert(bits);
            }
            CHECK(collect_words(n, w, &enumerate_symmetric_all) == expected);
        }
    }
}

TEST_CASE("weight-6 census at length 64") {
    uint64_t total = 0, symmetric = 0;
    const EnumStatus st = enumerate_primitive(6, 6, [&](const Pattern& p) {
        ++total;
        if (is_symmetric(p)) ++symmetric;
    });
    CHECK(st == EnumStatus::complete);
    CHECK(total == 381);
    CHECK(symmetric == 156);

    // Counting primitives among all symmetric patterns lands on the same 156.
    uint64_t primitive_symmetric = 0;
    enumerate_symmetric_all(6, 6, [&](const Pattern& p) {
        CHECK(is_symmetric(p));
        if (is_primitive(p)) ++primitive_symmetric;
    });
    CHECK(primitive_symmetric == 156);
}

TEST_CASE("search tree reproduces the subset recursion and true orders") {
    for (size_t w : {size_t{4}, size_t{6}}) {
        std::set<uint64_t> from_tree;
        const EnumStatus st = search_tree_symmetric(
            6, w, static_cast<int>(w), [&](const Pattern& p, int order) {
                CHECK(p.weight() == w);
                CHECK(is_symmetric(p));
                CHECK(order ==
                      static_cast<int>(minimal_generators(p)->size()));
                CHECK(from_tree.insert(p.words()[0]).second);
            });
        CHECK(st == EnumStatus::complete);
        CHECK(from_tree == collect_words(6, w, &enumerate_symmetric_all));
    }
}

TEST_CASE("search tree honors the order bound") {
    std::set<uint64_t> bounded;
    search_tree_symmetric(6, 6, 2, [&](const Pattern& p, int order) {
        CHECK(order <= 2);
        bounded.insert(p.words()[0]);
    });
    std::set<uint64_t> expected;
    enumerate_symmetric_all(6, 6, [&](const Pattern& p) {
        if (minimal_generators(p)->size() <= 2) expected.insert(p.words()[0]);
    });
    CHECK(bounded == expected);
}

TEST_CASE("empty and degenerate targets") {
    int emitted = 0;
    CHECK(search_tree_symmetric(4, 0, 3, [&](const Pattern& p, int order) {
              CHECK_FALSE(p.any());
              CHECK(order == 0);
              ++emitted;
          }) == EnumStatus::complete);
    CHECK(emitted == 1);
    CHECK(collect_words(0, 0, &enumerate_primitive).size() == 1);
    CHECK(collect_words(0, 1, &enumerate_primitive).size() == 1);
    CHECK_THROWS_AS(enumerate_primitive(3, 9, [](const Pattern&) {}),
                    std::invalid_argument);
}

TEST_CASE("emission caps flip the status exactly past the boundary") {
    uint64_t full = 0;
    enumerate_primitive(3, 3, [&](const Pattern&) { ++full; });
    REQUIRE(full > 1);

    uint64_t got = 0;
    EnumLimits exact;
    exact.max_emitted = full;
    CHECK(enumerate_primitive(3, 3, [&](const Pattern&) { ++got; }, exact) ==
          EnumStatus::complete);
    CHECK(got == full);

    got = 0;
    EnumLimits tight;
    tight.max_emitted = full - 1;
    CHECK(enumerate_primitive(3, 3, [&](const Pattern&) { ++got; }, tight) ==
          EnumStatus::cap_hit);
    CHECK(got == full - 1);

    EnumLimits nodes;
    nodes.max_nodes = 1;
    CHECK(count_search_tree_symmetric(6, 6, 3, 1, nodes).status ==
          EnumStatus::cap_hit);
}

TEST_CASE("counting walk matches the emitting walk and any worker count") {
    uint64_t emitted = 0;
    CHECK(search_tree_symmetric(8, 85, 3,
                                [&](const Pattern&, int) { ++emitted; }) ==
          EnumStatus::complete);
    CHECK(emitted == 2940);

    const SearchTreeCount solo = count_search_tree_symmetric(8, 85, 3, 1);
    CHECK(solo.status == EnumStatus::complete);
    CHECK(solo.total == 2940);
    uint64_t by_order_sum = 0;
    for (uint64_t c : solo.by_order) by_order_sum += c;
    CHECK(by_order_sum == solo.total);

    const SearchTreeCount pooled = count_search_tree_symmetric(8, 85, 3, 4);
    CHECK(pooled.total == solo.total);
    CHECK(pooled.by_order == solo.by_order);
    CHECK(pooled.nodes == solo.nodes);
    CHECK(pooled.status == solo.status);
}
