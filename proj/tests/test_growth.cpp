#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "citenet/error.hpp"
#include "citenet/growth_schedule.hpp"

using namespace citenet;

TEST_CASE("cohort size follows the rounded exponential") {
    const GrowthSchedule s(GrowthParams{});
    CHECK(s.cohort_size(0) == 10);
    CHECK(s.cohort_size(150) == 1412);
    CHECK(s.ref_target(0) == 1);
    CHECK(s.ref_target(150) == 15);
    CHECK_THROWS_AS(s.cohort_size(-1), std::out_of_range);
    CHECK_THROWS_AS(s.cohort_size(151), std::out_of_range);
}

TEST_CASE("round half up") {
    CHECK(round_half_up(2.5) == 3);
    CHECK(round_half_up(2.4999) == 2);
    CHECK(round_half_up(0.0) == 0);
}

TEST_CASE("frozen growth after a g_n event") {
    GrowthParams p;
    const GrowthSchedule s(p, {{100, PerturbTarget::g_n, 0.0}});
    CHECK(s.cohort_size(120) == s.cohort_size(100));
    CHECK(s.cohort_size(100) == GrowthSchedule(p).cohort_size(100));
    CHECK(s.g_n_at(99) == doctest::Approx(0.033));
    CHECK(s.g_n_at(100) == 0.0);
}

TEST_CASE("rate events keep the series continuous at t_star") {
    GrowthParams p;
    p.T = 200;
    p.g_r = 0.013;
    const GrowthSchedule base(p);
    const GrowthSchedule jump(p, {{165, PerturbTarget::g_r, 0.019}});
    CHECK(jump.ref_target_exact(165) == doctest::Approx(base.ref_target_exact(165)).epsilon(1e-14));
    CHECK(jump.ref_target_exact(170) ==
          doctest::Approx(base.ref_target_exact(165) * std::exp(5 * 0.019)).epsilon(1e-12));

    // Property: for random events the value at t_star is unchanged.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> t_pick(1, 200);
    std::uniform_real_distribution<double> g_pick(-0.05, 0.08);
    for (int k = 0; k < 100; ++k) {
        const int t = t_pick(rng);
        const GrowthSchedule e(p, {{t, PerturbTarget::g_n, g_pick(rng)}, {t, PerturbTarget::g_r, g_pick(rng)}});
        CHECK(e.cohort_size(t) == base.cohort_size(t));
        CHECK(e.ref_target(t) == base.ref_target(t));
    }
}

TEST_CASE("beta events switch the redirection fraction") {
    const GrowthSchedule s(GrowthParams{}, {{50, PerturbTarget::beta, 0.4}});
    CHECK(s.beta_at(49, 0.2) == 0.2);
    CHECK(s.beta_at(50, 0.2) == 0.4);
    CHECK(s.beta_at(150, 0.2) == 0.4);
}

TEST_CASE("schedule validation") {
    GrowthParams p;
    p.n0 = 0;
    CHECK_THROWS_AS(GrowthSchedule{p}, ValidationError);
    CHECK_THROWS_AS((GrowthSchedule{GrowthParams{}, {{0, PerturbTarget::g_n, 0.0}}}), ValidationError);
    CHECK_THROWS_AS((GrowthSchedule{GrowthParams{}, {{10, PerturbTarget::beta, 1.0}}}), ValidationError);
    CHECK_THROWS_AS((GrowthSchedule{GrowthParams{},
                                    {{10, PerturbTarget::g_n, 0.0}, {10, PerturbTarget::g_n, 0.1}}}),
                    ValidationError);
}

TEST_CASE("cohort ratio approaches exp(g_n)") {
    GrowthParams p;
    p.T = 300;
    const GrowthSchedule s(p);
    for (int t = 200; t < 300; ++t) {
        const double expected = static_cast<double>(s.cohort_size(t)) * std::exp(p.g_n);
        CHECK(std::abs(static_cast<double>(s.cohort_size(t + 1)) - expected) <= 1.0 + 1e-9);
    }
}

TEST_CASE("growth fit recovers exact exponentials") {
    std::vector<SeriesPoint> pts;
    for (int t = 0; t <= 20; ++t) pts.push_back({double(t), 5.0 * std::exp(0.05 * t)});
    const auto fit = fit_growth_rate(pts);
    CHECK(std::abs(fit.rate - 0.05) < 1e-12);
    CHECK(fit.intercept == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(fit.used == 21);
    CHECK(fit.stderr_rate < 1e-12);

    std::vector<SeriesPoint> flat{{0, 3}, {1, 3}, {2, 3}, {3, 3}};
    CHECK(std::abs(fit_growth_rate(flat).rate) < 1e-15);
}

TEST_CASE("growth fit excludes non-positive values") {
    std::vector<SeriesPoint> pts{{0, 1}, {1, 0}, {2, std::exp(0.2)}, {3, -4}, {4, std::exp(0.4)}};
    const auto fit = fit_growth_rate(pts);
    CHECK(fit.excluded == 2);
    CHECK(fit.used == 3);
    CHECK(fit.rate == doctest::Approx(0.1).epsilon(1e-12));
    std::vector<SeriesPoint> few{{0, 1}, {1, 0}, {2, 2}};
    CHECK_THROWS_AS(fit_growth_rate(few), ValidationError);
}

TEST_CASE("growth fit on noisy data brackets the true rate") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> eps(0.0, 0.02);
    std::vector<SeriesPoint> pts;
    for (int t = 0; t < 60; ++t) pts.push_back({double(t), std::exp(0.056 * t) * (1.0 + eps(rng))});
    const auto fit = fit_growth_rate(pts);
    CHECK(std::abs(fit.rate - 0.056) <= 3 * fit.stderr_rate);
    CHECK(fit.stderr_rate > 0);
}
