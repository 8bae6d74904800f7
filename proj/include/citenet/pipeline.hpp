#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "citenet/config.hpp"
#include "citenet/netmetrics.hpp"
#include "citenet/network.hpp"
#include "citenet/refage.hpp"

namespace citenet {

inline constexpr const char* kVersion = "1.0.0";

struct NetworkAnalysis {
    std::vector<CohortMetrics> cohorts;  // non-empty cohorts whose window is fully observed
    std::vector<RefAgeDistribution> snapshots;
    CrossingReport crossings;
    std::vector<IntervalFractions> intervals;  // per snapshot, when both crossings exist
    double clustering = 0.0;
};

NetworkAnalysis analyze(const CitationNetwork& net, const AnalysisConfig& cfg);

/// Snapshots actually used for a network spanning [first, last].
std::vector<int> snapshot_periods(const AnalysisConfig& cfg, int first, int last);

MetricsOptions metrics_options(const AnalysisConfig& cfg);

void write_metrics_csv(std::ostream& out, std::span<const CohortMetrics> rows,
                       const AnalysisConfig& cfg);
void write_refage_csv(std::ostream& out, std::span<const RefAgeDistribution> snapshots);
nlohmann::json crossings_json(const NetworkAnalysis& analysis);

struct RunRecord {
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::string config_text;  // canonical_config() of the run
    double wall_seconds = 0.0;
    std::size_t n_publications = 0;
    std::size_t n_links = 0;
};

nlohmann::json manifest_json(const RunRecord& rec);

/// Config text in the file format, without the output section. Parsing it
/// back yields the same simulation and analysis settings; its hash goes into
/// the manifest.
std::string canonical_config(const ScenarioConfig& cfg);

/// Simulate one seed and write nodes, edges, metrics, refage, crossings and
/// manifest files into `dir`.
RunRecord run_and_write(const ScenarioConfig& cfg, std::uint64_t seed,
                        const std::filesystem::path& dir);

/// Analyze an existing network and write metrics, refage and crossings into `dir`.
NetworkAnalysis analyze_and_write(const CitationNetwork& net, const AnalysisConfig& cfg,
                                  const std::filesystem::path& dir);

/// Runs `job(i)` for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any job is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

}  // namespace citenet
