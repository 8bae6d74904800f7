// Command-line front end: simulate, analyze, deflate, scenarios, estimate-growth.
//
// Exit status: 0 on success, 2 on invalid input or arguments, 1 on runtime failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "citenet/config.hpp"
#include "citenet/deflator.hpp"
#include "citenet/error.hpp"
#include "citenet/growth_schedule.hpp"
#include "citenet/ingest.hpp"
#include "citenet/pipeline.hpp"
#include "citenet/scenarios.hpp"

namespace fs = std::filesystem;
using namespace citenet;

namespace {

struct Globals {
    std::string config;
    std::vector<std::uint64_t> seeds;
    std::string out;
    unsigned threads = 0;
};

unsigned worker_count(unsigned requested) {
    if (requested) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    return in;
}

template <class Fn>
void write_text(const fs::path& path, Fn&& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    body(out);
    if (!out.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void report_line_errors(const std::vector<LineError>& errors, const std::string& source) {
    for (const auto& e : errors) std::cerr << source << ":" << e.line << ": " << e.message << '\n';
}

ScenarioConfig resolve_config(const Globals& g) {
    ScenarioConfig cfg = g.config.empty() ? ScenarioConfig{} : load_config(g.config);
    if (!g.seeds.empty()) cfg.seeds = g.seeds;
    if (!g.out.empty()) cfg.output_dir = g.out;
    validate(cfg);
    return cfg;
}

int cmd_simulate(const Globals& g) {
    const auto cfg = resolve_config(g);
    validate_periods(cfg);
    const fs::path root(cfg.output_dir);
    parallel_for(cfg.seeds.size(), worker_count(g.threads), [&](std::size_t i) {
        const auto seed = cfg.seeds[i];
        const auto rec = run_and_write(cfg, seed, root / fmt::format("seed_{}", seed));
        std::cout << fmt::format("seed {}: N={} L={} ({:.2f}s)\n", seed, rec.n_publications,
                                 rec.n_links, rec.wall_seconds);
    });
    return 0;
}

struct AnalyzeArgs {
    std::string nodes, edges, records;
    std::string forward = "drop";
    bool strict = false;
};

int cmd_analyze(const Globals& g, const AnalyzeArgs& a) {
    const auto cfg = resolve_config(g);
    std::optional<CitationNetwork> net;
    nlohmann::json build;
    if (!a.records.empty()) {
        if (!a.nodes.empty() || !a.edges.empty())
            throw ValidationError("--records excludes --nodes/--edges");
        ForwardEdgePolicy policy;
        if (a.forward == "drop") policy = ForwardEdgePolicy::drop;
        else if (a.forward == "keep") policy = ForwardEdgePolicy::keep_as_zero;
        else if (a.forward == "error") policy = ForwardEdgePolicy::error;
        else throw ValidationError("--forward must be drop, keep or error");
        auto in = open_input(a.records);
        auto parsed = parse_publications(in);
        report_line_errors(parsed.errors, a.records);
        if (a.strict && !parsed.errors.empty())
            throw ValidationError(fmt::format("{} malformed record(s)", parsed.errors.size()));
        auto built = build_network(parsed.records, policy);
        build = {{"records", parsed.records.size()},
                 {"line_errors", parsed.errors.size()},
                 {"dangling", built.report.dangling},
                 {"forward_dropped", built.report.forward_dropped},
                 {"forward_kept", built.report.forward_kept},
                 {"self_refs", built.report.self_refs},
                 {"duplicate_refs", built.report.duplicate_refs}};
        net = std::move(built.network);
    } else {
        if (a.nodes.empty() || a.edges.empty())
            throw ValidationError("analyze needs --nodes and --edges, or --records");
        auto nodes = open_input(a.nodes);
        auto edges = open_input(a.edges);
        net = read_network(nodes, edges);
    }
    const fs::path dir(cfg.output_dir);
    const auto analysis = analyze_and_write(*net, cfg.analysis, dir);
    if (!build.is_null())
        write_text(dir / "build_report.json", [&](std::ostream& o) { o << build.dump(2) << '\n'; });
    std::cout << fmt::format("analyzed N={} L={}: {} cohorts, {} snapshots\n", net->size(),
                             net->link_count(), analysis.cohorts.size(),
                             analysis.snapshots.size());
    return 0;
}

struct DeflateArgs {
    std::string careers, series;
    int baseline = 2010;
    std::optional<int> census;
    bool pooled = false;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string opt_num(const std::optional<double>& v) {
    return v ? fmt::format("{:.10g}", *v) : std::string("nan");
}

nlohmann::json fit_summary(const std::vector<std::pair<int, double>>& points, bool pooled) {
    std::vector<std::pair<double, double>> means;
    if (pooled)
        for (auto [y0, rho] : points) means.emplace_back(y0, rho);
    else
        means = cohort_means(points);
    nlohmann::json j{{"researchers", points.size()},
                     {"method", pooled ? "pooled" : "cohort_means"},
                     {"points", means.size()}};
    try {
        const auto fit = fit_g10(means);
        j["g10"] = fit.g10;
        j["stderr_g10"] = fit.stderr_g10;
        j["rho0"] = fit.rho0;
    } catch (const ValidationError& e) {
        j["g10"] = nullptr;
        j["reason"] = e.what();
    }
    return j;
}

int cmd_deflate(const Globals& g, const DeflateArgs& a) {
    auto series_in = open_input(a.series);
    const auto series = parse_deflator_series(series_in, a.baseline);
    auto careers_in = open_input(a.careers);
    const auto parsed = parse_careers(careers_in);
    report_line_errors(parsed.errors, a.careers);

    std::vector<CareerMetrics> metrics;
    for (const auto& c : parsed.careers) metrics.push_back(career_metrics(c, series, a.census));

    const fs::path dir(g.out.empty() ? "out" : g.out);
    fs::create_directories(dir);
    std::vector<std::pair<int, double>> rho_h, rho_c;
    write_text(dir / "careers.csv", [&](std::ostream& o) {
        o << "researcher,y0,h,hD,rhoH,C,CD,rhoC\n";
        for (std::size_t i = 0; i < metrics.size(); ++i) {
            const auto& m = metrics[i];
            o << fmt::format("{},{},{},{},{},{:.10g},{:.10g},{}\n", csv_field(parsed.careers[i].researcher),
                             m.y0, m.h, m.h_deflated, opt_num(m.rho_h), m.c_total,
                             m.c_total_deflated, opt_num(m.rho_c));
            if (m.rho_h && *m.rho_h > 0) rho_h.emplace_back(m.y0, *m.rho_h);
            if (m.rho_c && *m.rho_c > 0) rho_c.emplace_back(m.y0, *m.rho_c);
        }
    });
    const nlohmann::json summary{{"baseline", a.baseline},
                                 {"rho_h", fit_summary(rho_h, a.pooled)},
                                 {"rho_c", fit_summary(rho_c, a.pooled)}};
    write_text(dir / "inflation.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_scenarios(const Globals& g, const std::string& name) {
    std::vector<ScenarioKind> kinds;
    if (name == "all") kinds = all_scenarios();
    else if (auto k = scenario_from_string(name)) kinds.push_back(*k);
    else throw ValidationError("unknown scenario '" + name +
                               "', expected beta-jump, gr-jump, gn-freeze, no-redirect or all");
    std::vector<std::uint64_t> seeds = g.seeds;
    if (seeds.empty())
        for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
    const fs::path root(g.out.empty() ? "out" : g.out);
    for (auto kind : kinds) {
        const auto res = run_scenario(scenario_design(kind), seeds, worker_count(g.threads));
        const auto dir = root / to_string(kind);
        fs::create_directories(dir);
        write_text(dir / "cohorts.csv", [&](std::ostream& o) { write_scenario_csv(o, res); });
        const auto summary = scenario_summary(res);
        write_text(dir / "summary.json", [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
        std::cout << summary["scenario"].get<std::string>() << ": "
                  << summary["sign_test"].dump() << '\n';
    }
    return 0;
}

int cmd_estimate_growth(const std::string& path) {
    auto in = open_input(path);
    const auto series = parse_series(in);
    const auto fit = fit_growth_rate(series);
    const nlohmann::json j{{"rate", fit.rate},
                           {"stderr", fit.stderr_rate},
                           {"intercept", fit.intercept},
                           {"used", fit.used},
                           {"excluded", fit.excluded}};
    std::cout << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Citation network growth simulator and analysis tools"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Scenario config file");
    app.add_option("--seed", g.seeds, "Seed or comma-separated seeds")->delimiter(',');
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--threads", g.threads, "Worker threads (default: hardware)");

    auto* sim = app.add_subcommand("simulate", "Simulate networks and write per-seed outputs");
    sim->fallthrough();

    AnalyzeArgs aa;
    auto* ana = app.add_subcommand("analyze", "Compute metrics of an existing network");
    ana->fallthrough();
    ana->add_option("--nodes", aa.nodes, "Node table (id,cohort)");
    ana->add_option("--edges", aa.edges, "Edge list (citing_id,cited_id)");
    ana->add_option("--records", aa.records, "Publication records (JSONL)");
    ana->add_option("--forward", aa.forward, "Forward reference policy: drop, keep or error");
    ana->add_flag("--strict", aa.strict, "Fail on malformed records");

    DeflateArgs da;
    auto* def = app.add_subcommand("deflate", "Deflated career metrics");
    def->fallthrough();
    def->add_option("--careers", da.careers, "Career records (JSONL)")->required();
    def->add_option("--series", da.series, "Field size series (year,n_a)")->required();
    def->add_option("--baseline", da.baseline, "Baseline year");
    def->add_option("--census", da.census, "Last citation year counted");
    def->add_flag("--pooled", da.pooled, "Fit individual ratios instead of 10-year cohort means");

    std::string scenario;
    auto* scn = app.add_subcommand("scenarios", "Paired perturbation experiments");
    scn->fallthrough();
    scn->add_option("name", scenario, "beta-jump, gr-jump, gn-freeze, no-redirect or all")
        ->required();

    std::string growth_series;
    auto* est = app.add_subcommand("estimate-growth", "Fit an exponential growth rate");
    est->add_option("series", growth_series, "CSV with header and t,value rows")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sim) return cmd_simulate(g);
        if (*ana) return cmd_analyze(g, aa);
        if (*def) return cmd_deflate(g, da);
        if (*scn) return cmd_scenarios(g, scenario);
        if (*est) return cmd_estimate_growth(growth_series);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
