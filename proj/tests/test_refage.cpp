#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/refage.hpp"
#include "citenet/simulator.hpp"

using namespace citenet;

TEST_CASE("single edge histogram") {
    const auto net = CitationNetwork::from_lists({1990, 2000}, {{}, {0}});
    const auto h = ref_age_histogram(net, 2000, 2000);
    CHECK(h.pdf(10) == 1.0);
    CHECK(h.n_refs() == 1);
    CHECK(h.tail_cdf(10) == 1.0);
    CHECK(h.tail_cdf(11) == 0.0);
    CHECK(h.mean() == 10.0);
    CHECK_THROWS_AS(ref_age_histogram(net, 1990, 1999), ValidationError);
}

TEST_CASE("six-edge network matches edge enumeration") {
    const std::vector<int> cohorts{0, 1, 2, 3, 3, 5};
    const std::vector<std::vector<PubId>> refs{{}, {0}, {0, 1}, {2}, {0}, {3}};
    const auto net = CitationNetwork::from_lists(cohorts, refs);
    REQUIRE(net.link_count() == 6);
    for (int a = 1; a <= 5; ++a)
        for (int b = a; b <= 5; ++b) {
            std::map<int, std::uint64_t> brute;
            double sum = 0;
            std::uint64_t n = 0;
            for (PubId i = 0; i < net.size(); ++i)
                if (cohorts[i] >= a && cohorts[i] <= b)
                    for (PubId j : refs[i]) {
                        ++brute[cohorts[i] - cohorts[j]];
                        sum += cohorts[i] - cohorts[j];
                        ++n;
                    }
            if (n == 0) {
                CHECK_THROWS_AS(ref_age_histogram(net, a, b), ValidationError);
                continue;
            }
            const auto h = ref_age_histogram(net, a, b);
            CHECK(h.n_refs() == n);
            CHECK(h.mean() == doctest::Approx(sum / double(n)));
            for (int d = 0; d <= 6; ++d) CHECK(h.count(d) == brute[d]);
        }
}

TEST_CASE("pdf and tail are consistent on simulated data") {
    GrowthParams g;
    g.T = 60;
    const auto net = simulate(GrowthSchedule(g), ModelParams{});
    const auto h = ref_age_histogram(net, 50, 60);
    double total = 0;
    for (int d = 0; d <= h.max_distance(); ++d) total += h.pdf(d);
    CHECK(std::abs(total - 1.0) < 1e-9);
    CHECK(h.tail_cdf(0) == 1.0);
    CHECK(h.tail_cdf(1) == 1.0);  // no same-period citations in the model
    CHECK(h.pdf(0) == 0.0);
    for (int d = 0; d <= h.max_distance() + 1; ++d) {
        double tail = 0;
        for (int k = d; k <= h.max_distance(); ++k) tail += h.pdf(k);
        CHECK(std::abs(h.tail_cdf(d) - tail) < 1e-9);
        CHECK(h.tail_cdf(d + 1) <= h.tail_cdf(d));
    }
    CHECK(fraction_within(h, 0) == 0.0);
    CHECK(fraction_within(h, h.max_distance()) == doctest::Approx(1.0));
}

TEST_CASE("crossings of identical distributions are absent") {
    const auto a = RefAgeDistribution::from_counts(1, 1, {{1, 5}, {2, 3}, {3, 1}});
    CHECK_FALSE(crossing_point(a, a, CrossingMode::lower).has_value());
    CHECK_FALSE(crossing_point(a, a, CrossingMode::upper).has_value());
    const std::vector<RefAgeDistribution> same{a, a, a};
    const auto rep = crossing_report(same);
    CHECK_FALSE(rep.delta_minus.has_value());
    CHECK_FALSE(rep.delta_plus.has_value());
}

TEST_CASE("triangular histograms crossing at bin 6") {
    // Early peaks at 3, late peaks at 8; the late pdf overtakes at 6.
    std::map<int, std::uint64_t> early, late;
    for (int d = 1; d <= 12; ++d) {
        early[d] = static_cast<std::uint64_t>(std::max(0, 100 - 20 * std::abs(d - 3)));
        late[d] = static_cast<std::uint64_t>(std::max(0, 100 - 20 * std::abs(d - 8)));
    }
    const auto e = RefAgeDistribution::from_counts(1, 1, early);
    const auto l = RefAgeDistribution::from_counts(2, 2, late);
    CHECK(crossing_point(e, l, CrossingMode::lower) == 6);
    // Direction does not matter.
    CHECK(crossing_point(l, e, CrossingMode::lower) == 6);
}

TEST_CASE("single-bin blips are not crossings") {
    // late - early signs: -, -, +, -, -, +, + : first persistent flip at 6.
    const auto e = RefAgeDistribution::from_counts(1, 1, {{1, 10}, {2, 10}, {3, 5}, {4, 10}, {5, 10}, {6, 5}, {7, 5}});
    const auto l = RefAgeDistribution::from_counts(2, 2, {{1, 5}, {2, 5}, {3, 10}, {4, 5}, {5, 5}, {6, 10}, {7, 10}});
    CHECK(crossing_point(e, l, CrossingMode::lower) == 6);
}

TEST_CASE("interval fractions") {
    const auto h = RefAgeDistribution::from_counts(1, 1, {{2, 5}, {10, 3}, {60, 2}});
    const auto f = interval_fractions(h, 6, 50);
    CHECK(f.recent == doctest::Approx(0.5));
    CHECK(f.mid == doctest::Approx(0.3));
    CHECK(f.classic == doctest::Approx(0.2));
    CHECK(f.recent + f.mid + f.classic == 1.0);
    CHECK(fraction_within(h, 10) == doctest::Approx(0.8));
    const auto low = interval_fractions(h, 100, 200);
    CHECK(low.recent == 1.0);
    CHECK(low.mid == 0.0);
    CHECK_THROWS_AS(interval_fractions(h, 6, 6), ValidationError);
    CHECK_THROWS_AS(fraction_within(h, -1), ValidationError);
}

TEST_CASE("interval fractions sum to one on random histograms") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(0, 80), c(1, 50);
    for (int k = 0; k < 200; ++k) {
        std::map<int, std::uint64_t> m;
        for (int i = 0; i < 20; ++i) m[d(rng)] += static_cast<std::uint64_t>(c(rng));
        const auto h = RefAgeDistribution::from_counts(1, 1, m);
        const auto f = interval_fractions(h, 5, 40);
        CHECK(f.recent + f.mid + f.classic == 1.0);
        double prev = 0;
        for (int delta = 0; delta <= 81; ++delta) {
            const double w = fraction_within(h, delta);
            CHECK(w >= prev);
            prev = w;
        }
    }
}

TEST_CASE("lower crossing is stable across seeds") {
    std::vector<double> per_seed;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ModelParams p;
        p.seed = seed;
        const auto net = simulate(GrowthSchedule(GrowthParams{}), p);
        std::vector<RefAgeDistribution> snaps;
        for (int t = 50; t <= 150; t += 10) snaps.push_back(ref_age_histogram(net, t - 2, t));
        const auto rep = crossing_report(snaps);
        REQUIRE(rep.delta_minus.has_value());
        per_seed.push_back(*rep.delta_minus);
        if (rep.delta_plus) CHECK(*rep.delta_minus < *rep.delta_plus);
    }
    const double mean = std::accumulate(per_seed.begin(), per_seed.end(), 0.0) / 10.0;
    double ss = 0;
    for (double v : per_seed) ss += (v - mean) * (v - mean);
    CHECK(std::sqrt(ss / 10.0) <= 2.0);
}
