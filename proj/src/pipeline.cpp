#include "citenet/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "citenet/error.hpp"
#include "citenet/ingest.hpp"
#include "citenet/simulator.hpp"

namespace citenet {

namespace fs = std::filesystem;

MetricsOptions metrics_options(const AnalysisConfig& cfg) {
    MetricsOptions o;
    o.window = cfg.window;
    o.thresholds = cfg.thresholds;
    o.percentiles = cfg.percentiles;
    o.top_q = cfg.top_q;
    o.tau = cfg.tau;
    return o;
}

std::vector<int> snapshot_periods(const AnalysisConfig& cfg, int first, int last) {
    if (cfg.snapshots.empty()) return default_snapshots(first, last, cfg.snapshot_pool);
    std::vector<int> out;
    for (int s : cfg.snapshots)
        if (s <= last && s - cfg.snapshot_pool + 1 > first) out.push_back(s);
    return out;
}

NetworkAnalysis analyze(const CitationNetwork& net, const AnalysisConfig& cfg) {
    if (net.size() == 0) throw ValidationError("cannot analyze an empty network");
    NetworkAnalysis out;
    const CitationIndex index(net);
    const auto opts = metrics_options(cfg);
    const int first = net.first_cohort();
    const int last = net.last_cohort();
    for (int t = first; t + cfg.window <= last; ++t) {
        if (net.cohort_count(t) == 0) continue;
        out.cohorts.push_back(cohort_metrics(index, t, opts));
    }
    for (int s : snapshot_periods(cfg, first, last)) {
        try {
            out.snapshots.push_back(ref_age_histogram(net, s - cfg.snapshot_pool + 1, s));
        } catch (const ValidationError&) {
            // window without references: nothing to compare
        }
    }
    out.crossings = crossing_report(out.snapshots);
    if (out.crossings.delta_minus && out.crossings.delta_plus) {
        const int lo = static_cast<int>(std::lround(*out.crossings.delta_minus));
        const int hi = static_cast<int>(std::lround(*out.crossings.delta_plus));
        if (lo < hi)
            for (const auto& s : out.snapshots) out.intervals.push_back(interval_fractions(s, lo, hi));
    }
    out.clustering = clustering_coefficient(net);
    return out;
}

namespace {

std::string num(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

void write_metrics_csv(std::ostream& out, std::span<const CohortMetrics> rows,
                       const AnalysisConfig& cfg) {
    out << "t,n,gini,gini_cited,hhi";
    for (double c : cfg.thresholds) out << fmt::format(",F{:g}", c);
    for (double q : cfg.percentiles) out << fmt::format(",C{:g}", q * 100.0);
    out << fmt::format(",top{:g}_share\n", cfg.top_q * 100.0);
    for (const auto& r : rows) {
        out << r.cohort << ',' << r.n << ',' << num(r.gini) << ',' << num(r.gini_cited_only) << ','
            << (r.hhi ? num(*r.hhi) : std::string("nan"));
        for (double c : cfg.thresholds) out << ',' << num(r.uncited_fracs.at(c));
        for (double q : cfg.percentiles) out << ',' << num(r.percentiles.at(q));
        out << ',' << num(r.top_share) << '\n';
    }
}

void write_refage_csv(std::ostream& out, std::span<const RefAgeDistribution> snapshots) {
    out << "window_start,window_end,delta_r,pdf,tail_cdf\n";
    for (const auto& s : snapshots)
        for (int d = 0; d <= s.max_distance(); ++d)
            out << s.window_start() << ',' << s.window_end() << ',' << d << ',' << num(s.pdf(d))
                << ',' << num(s.tail_cdf(d)) << '\n';
}

nlohmann::json crossings_json(const NetworkAnalysis& a) {
    using nlohmann::json;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    auto opti = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
    json j;
    j["delta_minus"] = opt(a.crossings.delta_minus);
    j["delta_plus"] = opt(a.crossings.delta_plus);
    j["pairs"] = json::array();
    for (const auto& p : a.crossings.pairs)
        j["pairs"].push_back({{"early_end", p.early_end},
                              {"late_end", p.late_end},
                              {"lower", opti(p.lower)},
                              {"upper", opti(p.upper)}});
    j["snapshots"] = json::array();
    for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
        const auto& s = a.snapshots[i];
        json e{{"window_start", s.window_start()},
               {"window_end", s.window_end()},
               {"n_refs", s.n_refs()},
               {"mean_delta_r", s.mean()}};
        if (i < a.intervals.size())
            e["fractions"] = {{"recent", a.intervals[i].recent},
                              {"mid", a.intervals[i].mid},
                              {"classic", a.intervals[i].classic}};
        j["snapshots"].push_back(std::move(e));
    }
    j["clustering"] = a.clustering;
    return j;
}

nlohmann::json manifest_json(const RunRecord& rec) {
    return {{"version", kVersion},
            {"seed", rec.seed},
            {"config_hash", fmt::format("{:016x}", rec.config_hash)},
            {"config", rec.config_text},
            {"wall_seconds", rec.wall_seconds},
            {"publications", rec.n_publications},
            {"links", rec.n_links}};
}

std::string canonical_config(const ScenarioConfig& cfg) {
    auto list = [](const auto& v) {
        std::string out;
        for (const auto& x : v) out += (out.empty() ? "" : ", ") + fmt::format("{}", x);
        return out;
    };
    std::ostringstream os;
    const auto& g = cfg.growth;
    os << fmt::format("[growth]\nn0 = {:.17g}\nr0 = {:.17g}\ng_n = {:.17g}\ng_r = {:.17g}\nT = {}\n",
                      g.n0, g.r0, g.g_n, g.g_r, g.T);
    for (const auto& e : cfg.perturbations)
        os << fmt::format("perturb = ({}, {}, {:.17g})\n", e.t_star, to_string(e.target),
                          e.new_value);
    const auto& m = cfg.model;
    os << fmt::format("[model]\nc_cross = {:.17g}\nalpha = {:.17g}\nbeta = {:.17g}\n", m.c_cross,
                      m.alpha, m.beta);
    const auto& a = cfg.analysis;
    os << fmt::format("[analysis]\nwindow = {}\nthresholds = {}\npercentiles = {}\ntop_q = {:.17g}\n",
                      a.window, list(a.thresholds), list(a.percentiles), a.top_q);
    if (a.tau) os << "tau = " << *a.tau << '\n';
    if (!a.snapshots.empty()) os << "snapshots = " << list(a.snapshots) << '\n';
    os << fmt::format("snapshot_pool = {}\nlifecycle_span = {}\ndelta = {}\n", a.snapshot_pool,
                      a.lifecycle_span, a.delta);
    return os.str();
}

namespace {

template <class Fn>
void write_file(const fs::path& path, Fn&& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_analysis(const NetworkAnalysis& a, const AnalysisConfig& cfg, const fs::path& dir) {
    write_file(dir / "metrics.csv", [&](std::ostream& o) { write_metrics_csv(o, a.cohorts, cfg); });
    write_file(dir / "refage.csv", [&](std::ostream& o) { write_refage_csv(o, a.snapshots); });
    write_file(dir / "crossings.json",
               [&](std::ostream& o) { o << crossings_json(a).dump(2) << '\n'; });
}

}  // namespace

RunRecord run_and_write(const ScenarioConfig& cfg, std::uint64_t seed, const fs::path& dir) {
    validate_periods(cfg);
    const auto start = std::chrono::steady_clock::now();
    ModelParams params = cfg.model;
    params.seed = seed;
    const auto net = simulate(cfg.schedule(), params);
    const auto analysis = analyze(net, cfg.analysis);

    RunRecord rec;
    rec.seed = seed;
    rec.config_text = canonical_config(cfg);
    rec.config_hash = fnv1a64(rec.config_text);
    rec.n_publications = net.size();
    rec.n_links = net.link_count();

    fs::create_directories(dir);
    write_file(dir / "nodes.csv", [&](std::ostream& o) { write_nodes(o, net); });
    write_file(dir / "edges.csv", [&](std::ostream& o) { write_edges(o, net); });
    write_analysis(analysis, cfg.analysis, dir);
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(dir / "manifest.json",
               [&](std::ostream& o) { o << manifest_json(rec).dump(2) << '\n'; });
    return rec;
}

NetworkAnalysis analyze_and_write(const CitationNetwork& net, const AnalysisConfig& cfg,
                                  const fs::path& dir) {
    auto a = analyze(net, cfg);
    fs::create_directories(dir);
    write_analysis(a, cfg, dir);
    return a;
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& job) {
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace citenet
