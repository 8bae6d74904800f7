#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "citenet/config.hpp"
#include "citenet/error.hpp"
#include "citenet/ingest.hpp"
#include "citenet/pipeline.hpp"
#include "citenet/scenarios.hpp"
#include "citenet/simulator.hpp"
#include "citenet/stats.hpp"

namespace fs = std::filesystem;
using namespace citenet;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("citenet_test_" + tag + "_" + std::to_string(::rand()))) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

ScenarioConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
    const auto cfg = parse(R"(
# baseline with a jump
[growth]
T = 120
g_n = 0.03
perturb = (100, beta, 0.4)
[model]
c_cross = 6
[analysis]
window = 4
percentiles = 0.5, 0.9
snapshots = 60, 70
[output]
dir = results
seeds = 3, 4
)");
    CHECK(cfg.growth.T == 120);
    CHECK(cfg.growth.g_n == 0.03);
    REQUIRE(cfg.perturbations.size() == 1);
    CHECK(cfg.perturbations[0].t_star == 100);
    CHECK(cfg.perturbations[0].target == PerturbTarget::beta);
    CHECK(cfg.model.c_cross == 6);
    CHECK(cfg.analysis.window == 4);
    CHECK(cfg.analysis.percentiles == std::vector<double>{0.5, 0.9});
    CHECK(cfg.analysis.snapshots == std::vector<int>{60, 70});
    CHECK(cfg.output_dir == "results");
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
}

TEST_CASE("config errors name the key and the reason") {
    CHECK_THROWS_WITH_AS(parse("[model]\nbeta = 1\n"), doctest::Contains("model.beta"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("[model]\nbeta = 1\n"), doctest::Contains("[0, 1)"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("[growth]\nT = ten\n"), doctest::Contains("growth.T"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("[growth]\nsize = 3\n"), doctest::Contains("unknown key"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("[nope]\n"), doctest::Contains("unknown section"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("T = 3\n"), doctest::Contains("outside of a section"), ValidationError);
    CHECK_THROWS_WITH_AS(parse("[growth]\nperturb = (10, alpha, 1)\n"), doctest::Contains("unknown target"),
                         ValidationError);
    CHECK_NOTHROW(parse("[analysis]\nsnapshots = 500\n"));
    CHECK_THROWS_WITH_AS(validate_periods(parse("[analysis]\nsnapshots = 500\n")),
                         doctest::Contains("analysis.snapshots"), ValidationError);
    CHECK_THROWS_AS(validate_periods(parse("[analysis]\ntau = 151\n")), ValidationError);
    CHECK_THROWS_AS(parse("[growth]\nperturb = (0, g_n, 0)\n"), ValidationError);
}

TEST_CASE("bundled default scenario") {
    const auto cfg = load_config(CITENET_SOURCE_DIR "/configs/default.scenario");
    CHECK(cfg.growth.T == 150);
    CHECK(cfg.model.c_cross == 7);
    CHECK(cfg.model.beta == 0.2);
}

TEST_CASE("canonical config parses back to the same settings") {
    auto cfg = parse("[growth]\nT = 90\nperturb = (50, g_r, 0.0123)\n[analysis]\ntau = 80\nsnapshots = 40, 50\n");
    const auto text = canonical_config(cfg);
    std::istringstream in(text);
    const auto back = parse_config(in);
    CHECK(canonical_config(back) == text);
    CHECK(back.perturbations == cfg.perturbations);
    CHECK(back.analysis.tau == 80);
}

TEST_CASE("default snapshots step back from the last period") {
    CHECK(default_snapshots(0, 150, 3) ==
          std::vector<int>{50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150});
    CHECK(default_snapshots(0, 25, 3) == std::vector<int>{5, 15, 25});
}

TEST_CASE("metrics csv layout") {
    CohortMetrics m;
    m.cohort = 3;
    m.n = 2;
    m.gini = 0.5;
    for (double c : {0.0, 1.0, 2.0, 5.0, 10.0}) m.uncited_fracs[c] = 0.5;
    for (double q : {0.5, 0.75, 0.9, 0.95, 0.99}) m.percentiles[q] = 2;
    m.top_share = 1;
    std::ostringstream out;
    const std::vector<CohortMetrics> rows{m};
    write_metrics_csv(out, rows, AnalysisConfig{});
    CHECK(out.str() ==
          "t,n,gini,gini_cited,hhi,F0,F1,F2,F5,F10,C50,C75,C90,C95,C99,top1_share\n"
          "3,2,0.5,0,nan,0.5,0.5,0.5,0.5,0.5,2,2,2,2,2,1\n");
}

TEST_CASE("hand-built corpus metrics") {
    // Cohort 0: a, b. a is cited by c (t=1) and d (t=2), b by d.
    const auto net = CitationNetwork::from_lists({0, 0, 1, 2}, {{}, {}, {0}, {0, 1}});
    AnalysisConfig cfg;
    cfg.window = 2;
    cfg.snapshots = {2};
    cfg.snapshot_pool = 1;
    const auto a = analyze(net, cfg);
    REQUIRE(a.cohorts.size() == 1);
    const auto& m = a.cohorts[0];
    CHECK(m.n == 2);
    CHECK(m.gini == doctest::Approx(1.0 / 6.0));
    CHECK(*m.hhi == doctest::Approx(5.0 / 9.0));
    CHECK(m.uncited_fracs.at(0) == 0.0);
    CHECK(m.uncited_fracs.at(1) == 0.5);
    CHECK(m.percentiles.at(0.5) == 1);
    CHECK(m.percentiles.at(0.99) == 2);
    CHECK(m.top_share == doctest::Approx(2.0 / 3.0));
    REQUIRE(a.snapshots.size() == 1);
    CHECK(a.snapshots[0].count(2) == 2);
}

TEST_CASE("simulate and analyze outputs agree and repeat byte for byte") {
    TempDir tmp("pipeline");
    ScenarioConfig cfg;
    cfg.growth.T = 70;
    cfg.analysis.snapshots = {30, 40, 50, 60, 70};
    const auto rec = run_and_write(cfg, 7, tmp.path / "a");
    run_and_write(cfg, 7, tmp.path / "b");
    for (const char* f : {"nodes.csv", "edges.csv", "metrics.csv", "refage.csv", "crossings.json"})
        CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));

    std::ifstream nodes(tmp.path / "a" / "nodes.csv"), edges(tmp.path / "a" / "edges.csv");
    const auto net = read_network(nodes, edges);
    CHECK(net.size() == rec.n_publications);
    analyze_and_write(net, cfg.analysis, tmp.path / "c");
    for (const char* f : {"metrics.csv", "refage.csv", "crossings.json"})
        CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "c" / f));

    const auto manifest = nlohmann::json::parse(slurp(tmp.path / "a" / "manifest.json"));
    CHECK(manifest["seed"] == 7);
    CHECK(manifest["publications"] == rec.n_publications);
    std::istringstream cfg_text(manifest["config"].get<std::string>());
    CHECK(canonical_config(parse_config(cfg_text)) == canonical_config(cfg));
}

TEST_CASE("parallel_for covers every index and propagates errors") {
    std::vector<int> hit(50);
    parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
    for (int h : hit) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 4) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

TEST_CASE("statistics helpers") {
    CHECK(stats::sign_test_p(10, 10) == doctest::Approx(1.0 / 1024));
    CHECK(stats::sign_test_p(9, 10) == doctest::Approx(11.0 / 1024));
    CHECK(stats::sign_test_p(0, 10) == doctest::Approx(1.0));
    const std::vector<double> x{1, 2, 3, 4, 5, 6}, y{2, 4, 5, 9, 10, 30}, z{6, 5, 4, 3, 2, 1};
    CHECK(stats::spearman(x, y).rho == doctest::Approx(1.0));
    CHECK(stats::spearman(x, z).rho == doctest::Approx(-1.0));
    const std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8}, b{2, 1, 4, 3, 6, 5, 8, 7};
    const auto c = stats::spearman(a, b);
    CHECK(c.rho == doctest::Approx(0.9047619));
    CHECK(c.p_two_sided == doctest::Approx(0.002).epsilon(0.1));
    CHECK(stats::median(std::vector<double>{3, 1, 2, 10}) == 2.5);
}

TEST_CASE("scenario designs") {
    const auto beta = scenario_design(ScenarioKind::beta_jump);
    CHECK(beta.control.growth.T == 200);
    CHECK(beta.control.model.c_cross == 6);
    CHECK(beta.perturbed.perturbations.size() == 1);
    CHECK(beta.compare_first == 165);
    const auto gr = scenario_design(ScenarioKind::gr_jump);
    CHECK(gr.control.growth.g_r == 0.013);
    CHECK(gr.perturbed.perturbations[0].new_value == 0.019);
    CHECK(scenario_design(ScenarioKind::no_redirect).perturbed.model.beta == 0.0);
    CHECK(scenario_from_string("gn-freeze") == ScenarioKind::gn_freeze);
    CHECK_FALSE(scenario_from_string("bogus").has_value());
    const std::vector<double> d{0.1, 0.2, -0.1, 0.0};
    const auto s = sign_test(d);
    CHECK(s.trials == 3);
    CHECK(s.increases == 2);
}

TEST_CASE("small scenario run is paired and reproducible") {
    auto design = scenario_design(ScenarioKind::beta_jump);
    for (auto* c : {&design.control, &design.perturbed}) c->growth.T = 80;
    design.perturbed.perturbations = {{60, PerturbTarget::beta, 0.4}};
    design.compare_first = 60;
    design.compare_last = 75;
    const std::vector<std::uint64_t> seeds{1, 2};
    const auto a = run_scenario(design, seeds, 2);
    const auto b = run_scenario(design, seeds, 1);
    std::ostringstream oa, ob;
    write_scenario_csv(oa, a);
    write_scenario_csv(ob, b);
    CHECK(oa.str() == ob.str());
    // Before the perturbation both arms are the same network.
    for (std::size_t i = 0; i < a.control[0].rows.size(); ++i)
        if (a.control[0].rows[i].t + 5 < 60)
            CHECK(a.control[0].rows[i].gini == a.perturbed[0].rows[i].gini);
}
