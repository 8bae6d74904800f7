#include "citenet/scenarios.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "citenet/error.hpp"
#include "citenet/netmetrics.hpp"
#include "citenet/pipeline.hpp"
#include "citenet/refage.hpp"
#include "citenet/simulator.hpp"
#include "citenet/stats.hpp"

namespace citenet {

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::beta_jump: return "beta-jump";
        case ScenarioKind::gr_jump: return "gr-jump";
        case ScenarioKind::gn_freeze: return "gn-freeze";
        case ScenarioKind::no_redirect: return "no-redirect";
    }
    return "unknown";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& name) {
    for (auto k : all_scenarios())
        if (to_string(k) == name) return k;
    return std::nullopt;
}

std::vector<ScenarioKind> all_scenarios() {
    return {ScenarioKind::beta_jump, ScenarioKind::gr_jump, ScenarioKind::gn_freeze,
            ScenarioKind::no_redirect};
}

ScenarioDesign scenario_design(ScenarioKind kind) {
    constexpr int t_star = 165;
    ScenarioConfig base;
    base.growth.T = 200;
    base.model.c_cross = 6;
    base.model.alpha = 5;
    base.model.beta = 0.2;

    ScenarioDesign d;
    d.kind = kind;
    d.control = base;
    d.perturbed = base;
    d.compare_first = t_star;
    d.compare_last = base.growth.T - base.analysis.window;
    switch (kind) {
        case ScenarioKind::beta_jump:
            d.perturbed.perturbations.push_back({t_star, PerturbTarget::beta, 0.4});
            break;
        case ScenarioKind::gr_jump:
            d.control.growth.g_r = 0.013;
            d.perturbed.growth.g_r = 0.013;
            d.perturbed.perturbations.push_back({t_star, PerturbTarget::g_r, 0.019});
            break;
        case ScenarioKind::gn_freeze:
            d.perturbed.perturbations.push_back({t_star, PerturbTarget::g_n, 0.0});
            break;
        case ScenarioKind::no_redirect:
            d.perturbed.model.beta = 0.0;
            d.compare_first = 30;
            break;
    }
    return d;
}

ArmRun cohort_rows(const ScenarioConfig& cfg, std::uint64_t seed) {
    ModelParams params = cfg.model;
    params.seed = seed;
    const auto net = simulate(cfg.schedule(), params);
    const CitationIndex index(net);
    const auto opts = metrics_options(cfg.analysis);
    ArmRun run;
    for (int t = 1; t + cfg.analysis.window <= net.last_cohort(); ++t) {
        if (net.cohort_count(t) == 0) continue;
        const auto m = cohort_metrics(index, t, opts);
        CohortRow row;
        row.t = t;
        row.n = m.n;
        row.mean_citations = m.mean;
        row.gini = m.gini;
        const auto tally = windowed_citations(index, t, cfg.analysis.window);
        row.uncited = fraction_at_most(tally.counts, 0.0);
        row.c99 = percentile_value(tally.counts, 0.99);
        try {
            const auto hist = ref_age_histogram(net, t, t);
            row.within_delta = fraction_within(hist, cfg.analysis.delta);
            row.mean_ref_distance = hist.mean();
        } catch (const ValidationError&) {
            // no references from this cohort
        }
        run.rows.push_back(row);
    }
    return run;
}

SignTest sign_test(std::span<const double> differences) {
    SignTest s;
    for (double d : differences) {
        if (d == 0.0) continue;
        ++s.trials;
        if (d > 0.0) ++s.increases;
    }
    s.p_increase = stats::sign_test_p(s.increases, s.trials);
    s.p_decrease = stats::sign_test_p(s.trials - s.increases, s.trials);
    return s;
}

namespace {

struct Averages {
    double gini = 0.0;
    double citations = 0.0;
    double within = 0.0;
};

Averages average(const ArmRun& run, int first, int last) {
    Averages a;
    std::size_t k = 0;
    for (const auto& r : run.rows) {
        if (r.t < first || r.t > last) continue;
        a.gini += r.gini;
        a.citations += r.mean_citations;
        a.within += r.within_delta;
        ++k;
    }
    if (k == 0) throw ValidationError("no cohorts in the comparison range");
    a.gini /= static_cast<double>(k);
    a.citations /= static_cast<double>(k);
    a.within /= static_cast<double>(k);
    return a;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioDesign& design, std::span<const std::uint64_t> seeds,
                            unsigned threads) {
    validate(design.control);
    validate(design.perturbed);
    if (seeds.empty()) throw ValidationError("scenario needs at least one seed");
    ScenarioResult res;
    res.design = design;
    res.seeds.assign(seeds.begin(), seeds.end());
    res.control.resize(seeds.size());
    res.perturbed.resize(seeds.size());
    parallel_for(2 * seeds.size(), threads, [&](std::size_t job) {
        const auto i = job / 2;
        if (job % 2 == 0) res.control[i] = cohort_rows(design.control, seeds[i]);
        else res.perturbed[i] = cohort_rows(design.perturbed, seeds[i]);
    });

    std::vector<double> dg, dc, dw;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const auto a = average(res.control[i], design.compare_first, design.compare_last);
        const auto b = average(res.perturbed[i], design.compare_first, design.compare_last);
        res.comparisons.push_back(
            {seeds[i], a.gini, b.gini, a.citations, b.citations, a.within, b.within});
        dg.push_back(b.gini - a.gini);
        dc.push_back(b.citations - a.citations);
        dw.push_back(b.within - a.within);
    }
    res.gini = sign_test(dg);
    res.citations = sign_test(dc);
    res.within = sign_test(dw);
    return res;
}

void write_scenario_csv(std::ostream& out, const ScenarioResult& res) {
    out << "t,seed,arm,n,mean_c,gini,F0,C99,F_within_delta,mean_delta_r\n";
    auto emit = [&](const ArmRun& run, std::uint64_t seed, const char* arm) {
        for (const auto& r : run.rows)
            out << fmt::format("{},{},{},{},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}\n", r.t,
                               seed, arm, r.n, r.mean_citations, r.gini, r.uncited, r.c99,
                               r.within_delta, r.mean_ref_distance);
    };
    for (std::size_t i = 0; i < res.seeds.size(); ++i) {
        emit(res.control[i], res.seeds[i], "control");
        emit(res.perturbed[i], res.seeds[i], "perturbed");
    }
}

nlohmann::json scenario_summary(const ScenarioResult& res) {
    using nlohmann::json;
    auto test = [](const SignTest& s) {
        return json{{"increases", s.increases},
                    {"trials", s.trials},
                    {"p_increase", s.p_increase},
                    {"p_decrease", s.p_decrease}};
    };
    json j;
    j["scenario"] = to_string(res.design.kind);
    j["compare_cohorts"] = {res.design.compare_first, res.design.compare_last};
    j["seeds"] = res.seeds;
    j["per_seed"] = json::array();
    for (const auto& c : res.comparisons)
        j["per_seed"].push_back({{"seed", c.seed},
                                 {"gini_control", c.gini_control},
                                 {"gini_perturbed", c.gini_perturbed},
                                 {"mean_c_control", c.citations_control},
                                 {"mean_c_perturbed", c.citations_perturbed},
                                 {"within_control", c.within_control},
                                 {"within_perturbed", c.within_perturbed}});
    j["sign_test"] = {{"gini", test(res.gini)},
                      {"mean_c", test(res.citations)},
                      {"within_delta", test(res.within)}};
    return j;
}

}  // namespace citenet
