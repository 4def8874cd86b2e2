#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "polarpunct/density_evolution.hpp"
#include "polarpunct/enumeration.hpp"
#include "polarpunct/equivalence.hpp"
#include "polarpunct/erasure.hpp"
#include "polarpunct/pattern_io.hpp"

using namespace polarpunct;

namespace {

const Pattern ref_a = parse_pattern(3, "11101000");
const Pattern ref_b = parse_pattern(3, "11011000");

std::vector<double> doubles(const std::vector<Dyadic>& v) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
    return out;
}

} // namespace

TEST_CASE("dyadic arithmetic is exact and prints exact decimals") {
    const Dyadic half = Dyadic::from_ratio(1, 1);
    const Dyadic q = Dyadic::from_ratio(3, 3);  // 3/8
    CHECK(half.to_double() == 0.5);
    CHECK((half * q).to_double() == 0.1875);
    CHECK((half * q).to_decimal_string() == "0.1875");
    CHECK(q.complement().to_decimal_string() == "0.625");
    CHECK(q.halve().to_decimal_string() == "0.1875");
    CHECK(Dyadic::one().complement() == Dyadic::zero());
    CHECK(check_erasure(half, half).to_decimal_string() == "0.75");
    CHECK(Dyadic::from_ratio(2, 2) == half);  // reduced on construction
    CHECK(q < half);
    CHECK_THROWS_AS(Dyadic::from_ratio(9, 3), std::invalid_argument);
    CHECK_THROWS_AS(Dyadic::from_ratio(1, 63), std::invalid_argument);
    const Dyadic tiny = Dyadic::from_ratio(1, 40);
    CHECK_THROWS_AS(tiny * tiny, std::overflow_error);
}

TEST_CASE("erasure profiles of the reference pair at half erasure rate") {
    const DeResult a = bec_de(ref_a, 0.5);
    const std::vector<double> expect_a = {1, 1, 1, 0.75, 1, 0.625, 0.5625, 0.0625};
    CHECK(a.reliability == expect_a);
    for (size_t i = 0; i < 8; ++i) CHECK(a.p_ga[i] == 0.5 * expect_a[i]);

    const DeResult b = bec_de(ref_b, 0.5);
    const std::vector<double> expect_b = {1, 1, 1, 0.75, 1, 0.75, 0.4375, 0.0625};
    CHECK(b.reliability == expect_b);

    // Same erasure image, different bit-channel profiles.
    CHECK(erasure_pattern(ref_a) == erasure_pattern(ref_b));
    CHECK(a.reliability != b.reliability);
}

TEST_CASE("exact dyadic evolution agrees with the double path") {
    const std::vector<Dyadic> exact =
        bec_erasure_exact(ref_a, Dyadic::from_ratio(1, 1));
    CHECK(doubles(exact) == bec_de(ref_a, 0.5).reliability);
    CHECK(exact[7].to_decimal_string() == "0.0625");
    CHECK(exact[7].complement().to_decimal_string() == "0.9375");
    CHECK(exact[6].halve().to_decimal_string() == "0.28125");
}

TEST_CASE("unpuncturing a position never makes any bit channel worse") {
    for (uint32_t r : {0u, 1u, 2u, 4u}) {
        Pattern fewer = ref_a;
        fewer.set(r, false);
        const DeResult was = bec_de(ref_a, 0.5);
        const DeResult now = bec_de(fewer, 0.5);
        for (size_t i = 0; i < 8; ++i) CHECK(now.reliability[i] <= was.reliability[i]);
    }
}

TEST_CASE("mean transform round trips and stays monotone") {
    CHECK(ga_phi(0.0) == 1.0);
    CHECK(ga_phi(1e-9) == 1.0);
    CHECK(ga_phi_inv(1.0) == 0.0);
    CHECK(ga_phi_inv(2.0) == 0.0);
    CHECK(std::isinf(ga_phi_inv(0.0)));
    CHECK(std::isinf(ga_phi_inv(-1.0)));
    // Continuity across the two-piece splice.
    CHECK(std::abs(ga_phi(10.0 - 1e-9) - ga_phi(10.0 + 1e-9)) < 1e-9);

    double prev = 2.0;
    for (double m = 0.05; m < 500.0; m *= 1.07) {
        const double y = ga_phi(m);
        CHECK(y > 0.0);
        CHECK(y <= 1.0);
        CHECK(y <= prev);
        prev = y;
        if (y < 1.0)
            CHECK(ga_phi_inv(y) == doctest::Approx(m).epsilon(1e-9));
    }
    for (double ly = -1e-3; ly > -69.0; ly -= 0.37) {
        const double y = std::exp(ly);
        CHECK(ga_phi(ga_phi_inv(y)) == doctest::Approx(y).epsilon(1e-10));
    }
    CHECK(ga_phi(ga_phi_inv(1e-30)) == doctest::Approx(1e-30).epsilon(1e-10));

    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(10.0) < 1e-22);
    CHECK(q_function(-10.0) >= 1.0 - 1e-15);
}

TEST_CASE("gaussian evolution erases exactly the structural positions") {
    const Pattern e = erasure_pattern(ref_a);
    const DeResult de = ga_de(ref_a, 1.0);
    for (size_t i = 0; i < 8; ++i) {
        CHECK((de.reliability[i] == 0.0) == e.get(i));
        if (e.get(i)) CHECK(de.p_ga[i] == 0.5);
        else CHECK(de.p_ga[i] < 0.5);
    }
}

TEST_CASE("gaussian profiles degrade with the noise variance") {
    Pattern p(6);
    for (uint32_t i = 0; i < 4; ++i) p.set(i, true);
    const DeResult quiet = ga_de(p, 0.6);
    const DeResult loud = ga_de(p, 1.0);
    for (size_t i = 0; i < 64; ++i)
        CHECK(quiet.p_ga[i] <= loud.p_ga[i] * (1 + 1e-12) + 1e-300);
}

TEST_CASE("information selection takes the most reliable free positions") {
    const DeResult de = bec_de(ref_b, 0.5);
    const Pattern excluded = erasure_pattern(ref_b);
    const Pattern two = select_information(de, 2, excluded);
    CHECK(to_bit_string(two) == "00000011");
    // Positions 3 and 5 tie; the larger index wins the last slot.
    const Pattern three = select_information(de, 3, excluded);
    CHECK(to_bit_string(three) == "00000111");
    CHECK(three.disjoint(excluded));
    CHECK_THROWS_AS(select_information(de, 5, excluded), std::invalid_argument);
    CHECK_THROWS_AS(select_information(de, 1, Pattern(2)), std::invalid_argument);
}

TEST_CASE("word error proxy reference values") {
    const DeResult a = bec_de(ref_a, 0.5);
    const DeResult b = bec_de(ref_b, 0.5);
    const Pattern ea = erasure_pattern(ref_a);
    const Pattern eb = erasure_pattern(ref_b);
    CHECK(wer_ga(a, select_information(a, 3, ea)) ==
          doctest::Approx(0.52130126953125).epsilon(1e-12));
    CHECK(wer_ga(b, select_information(b, 2, eb)) ==
          doctest::Approx(0.2431640625).epsilon(1e-12));
    CHECK(wer_ga(b, select_information(b, 3, eb)) ==
          doctest::Approx(0.52697753906250).epsilon(1e-12));
    CHECK(wer_ga(a, Pattern(3)) == 0.0);
    CHECK_THROWS_AS(wer_ga(a, Pattern(2)), std::invalid_argument);
}

TEST_CASE("word error proxy grows with every added position") {
    const DeResult de = bec_de(ref_a, 0.5);
    Pattern info(3);
    double prev = 0.0;
    for (uint32_t i : {7u, 6u, 5u, 3u}) {
        info.set(i, true);
        const double w = wer_ga(de, info);
        CHECK(w > prev);
        CHECK(w < 1.0);
        prev = w;
    }
}

TEST_CASE("identical profiles across every member of an equivalence class") {
    for (uint64_t bits : {uint64_t{0b11101000}, uint64_t{0b00010111},
                          uint64_t{0b10100101}}) {
        const Pattern p = Pattern::from_word(3, bits);
        const std::vector<double> reference = bec_de(p, 0.5).reliability;
        for (const Pattern& q : pattern_orbit(p))
            CHECK(bec_de(q, 0.5).reliability == reference);
    }
}

TEST_CASE("noise threshold finds the pass/fail edge") {
    Pattern p(6);
    for (uint32_t i = 0; i < 4; ++i) p.set(i, true);
    const Pattern excluded = erasure_pattern(p);
    const double eta = 1e-3;
    const double tol = 1e-3;
    const ThresholdResult th = noise_threshold(p, 20, eta, tol);
    CHECK(th.sigma2 > 1e-3);
    CHECK(th.sigma2 < 100.0);
    CHECK(th.snr_db == doctest::Approx(10.0 * std::log10(1.0 / th.sigma2)));
    auto wer_at = [&](double s2) {
        const DeResult de = ga_de(p, s2);
        return wer_ga(de, select_information(de, 20, excluded));
    };
    CHECK(wer_at(th.sigma2) <= eta);
    CHECK(wer_at(th.sigma2 + 2 * tol) > eta);

    // A plain downward scan lands on the same edge.
    const double coarse = 0.05;
    const ThresholdResult bisected = noise_threshold(p, 20, eta, coarse);
    double scanned = 0.0;
    for (double s2 = 2.0; s2 >= 1e-3; s2 -= coarse)
        if (wer_at(s2) <= eta) {
            scanned = s2;
            break;
        }
    CHECK(std::abs(bisected.sigma2 - scanned) <= coarse + 1e-12);

    CHECK_THROWS_AS(noise_threshold(p, 20, 0.0, tol), std::invalid_argument);
    CHECK_THROWS_AS(noise_threshold(p, 20, 1.5, tol), std::invalid_argument);
    CHECK_THROWS_AS(noise_threshold(p, 20, eta, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(noise_threshold(p, 61, eta, tol), std::invalid_argument);
}

TEST_CASE("noise threshold never rises as the payload grows") {
    Pattern p(6);
    for (uint32_t i = 0; i < 4; ++i) p.set(i, true);
    double prev = std::numeric_limits<double>::infinity();
    for (size_t k : {size_t{10}, size_t{15}, size_t{20}, size_t{25}, size_t{30}}) {
        const double th = noise_threshold(p, k, 1e-3, 1e-3).sigma2;
        CHECK(th <= prev + 1e-3);
        prev = th;
    }
}

TEST_CASE("known-zero positions only help") {
    Pattern none(3);
    Pattern tail(3);
    tail.set(6, true);
    tail.set(7, true);
    const DeResult base = bec_de(none, none, 0.5);
    const DeResult shortened = bec_de(none, tail, 0.5);
    for (size_t i = 0; i < 8; ++i)
        CHECK(shortened.p_ga[i] <= base.p_ga[i]);

    Pattern last(3);
    last.set(7, true);
    const DeResult ga = ga_de(none, last, 1.0);
    CHECK(std::isinf(ga.reliability[7]));
    CHECK(ga.p_ga[7] == 0.0);
    const DeResult ga_base = ga_de(none, 1.0);
    for (size_t i = 0; i < 8; ++i) {
        CHECK(std::isfinite(ga.p_ga[i]));
        CHECK(ga.p_ga[i] <= ga_base.p_ga[i] * (1 + 1e-12));
    }

    Pattern overlap(3);
    overlap.set(0, true);
    CHECK_THROWS_AS(bec_de(overlap, overlap, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ga_de(overlap, overlap, 1.0), std::invalid_argument);
}

TEST_CASE("channel dispatch reaches the matching evolution") {
    CHECK(run_de(ref_a, ChannelModel::parse("bec:0.5")).reliability ==
          bec_de(ref_a, 0.5).reliability);
    CHECK(run_de(ref_a, ChannelModel::parse("awgn:0.8")).reliability ==
          ga_de(ref_a, 0.8).reliability);
    Pattern last(3);
    last.set(7, true);
    CHECK(run_de(ref_a, last, ChannelModel::parse("awgn:0.8")).reliability ==
          ga_de(ref_a, last, 0.8).reliability);
}

TEST_CASE("pattern optimization matches brute force and any worker count") {
    std::vector<Pattern> candidates;
    search_tree_symmetric(3, 2, 2, [&](const Pattern& p, int) {
        candidates.push_back(p);
    });
    REQUIRE(candidates.size() >= 2);

    OptimizeConfig cfg;
    cfg.k = 4;
    cfg.objective = Objective::min_wer;
    cfg.sigma2 = 0.8;
    const OptimizeResult got = optimize_pattern(candidates, cfg);
    CHECK(got.candidates_evaluated == candidates.size());

    double best = 2.0;
    for (const Pattern& p : candidates) {
        const DeResult de = ga_de(p, cfg.sigma2);
        const double w = wer_ga(de, select_information(de, cfg.k,
                                                       erasure_pattern(p)));
        best = std::min(best, w);
    }
    CHECK(got.score == best);
    {
        const DeResult de = ga_de(got.pattern, cfg.sigma2);
        CHECK(got.info == select_information(de, cfg.k, erasure_pattern(got.pattern)));
        CHECK(wer_ga(de, got.info) == got.score);
    }

    OptimizeConfig pooled = cfg;
    pooled.workers = 3;
    const OptimizeResult same = optimize_pattern(candidates, pooled);
    CHECK(same.pattern == got.pattern);
    CHECK(same.score == got.score);
    CHECK(same.info == got.info);
}

TEST_CASE("threshold objective maximizes the per-candidate threshold") {
    std::vector<Pattern> candidates;
    search_tree_symmetric(4, 2, 2, [&](const Pattern& p, int) {
        candidates.push_back(p);
    });
    REQUIRE(!candidates.empty());
    OptimizeConfig cfg;
    cfg.k = 8;
    cfg.objective = Objective::max_threshold;
    cfg.eta = 1e-2;
    cfg.tol = 1e-3;
    const OptimizeResult got = optimize_pattern(candidates, cfg);
    double best = 0.0;
    for (const Pattern& p : candidates)
        best = std::max(best, noise_threshold(p, cfg.k, cfg.eta, cfg.tol).sigma2);
    CHECK(got.score == best);
}

TEST_CASE("unusable candidates are skipped, not fatal") {
    Pattern bad(4);
    for (uint32_t i = 0; i < 15; ++i) bad.set(i, true);  // leaves one free slot
    Pattern good(4);
    good.set(0, true);
    OptimizeConfig cfg;
    cfg.k = 8;
    cfg.objective = Objective::min_wer;
    cfg.sigma2 = 0.5;
    const OptimizeResult got = optimize_pattern({bad, good}, cfg);
    CHECK(got.pattern == good);
    CHECK(got.candidates_evaluated == 2);
    CHECK_THROWS_AS(optimize_pattern({bad}, cfg), std::runtime_error);
    CHECK_THROWS_AS(optimize_pattern({}, cfg), std::invalid_argument);
}
