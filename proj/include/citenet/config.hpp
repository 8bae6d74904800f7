#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citenet/growth_schedule.hpp"
#include "citenet/simulator.hpp"

namespace citenet {

struct AnalysisConfig {
    int window = 5;  // citation window of the per-cohort metrics
    std::vector<double> thresholds{0, 1, 2, 5, 10};
    std::vector<double> percentiles{0.5, 0.75, 0.9, 0.95, 0.99};
    double top_q = 0.01;
    std::optional<int> tau;        // top-share tally time; default: last period
    std::vector<int> snapshots;    // citing periods of the reference-age snapshots
    int snapshot_pool = 3;         // snapshot s pools citing periods [s - pool + 1, s]
    int lifecycle_span = 10;
    int delta = 8;                 // distance for F(distance <= delta)
};

/// A simulation scenario as read from a config file:
///
///     # comment
///     [growth]
///     n0 = 10
///     r0 = 1
///     g_n = 0.033
///     g_r = 0.018
///     T = 150
///     perturb = (165, beta, 0.4)
///     [model]
///     c_cross = 7
///     alpha = 5
///     beta = 0.2
///     [analysis]
///     window = 5
///     percentiles = 0.5, 0.75, 0.9, 0.95, 0.99
///     snapshots = 50, 60, 70
///     snapshot_pool = 3
///     tau = 150
///     [output]
///     dir = out
///     seeds = 1, 2, 3
struct ScenarioConfig {
    GrowthParams growth;
    std::vector<PerturbationEvent> perturbations;
    ModelParams model;
    AnalysisConfig analysis;
    std::string output_dir = "out";
    std::vector<std::uint64_t> seeds{1};

    GrowthSchedule schedule() const { return GrowthSchedule(growth, perturbations); }
};

/// Parse and validate. Every failure is a ValidationError naming
/// `section.key` and the reason; no partial result escapes.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Check cross-module preconditions (schedule, model bounds, analysis ranges).
void validate(const ScenarioConfig& cfg);

/// Check that tau and the snapshot periods fit inside a simulated run of
/// length growth.T. Not applied when analyzing an external corpus.
void validate_periods(const ScenarioConfig& cfg);

/// Snapshots used when none are configured: every 10 periods back from the
/// last period, down to 10 snapshots back.
std::vector<int> default_snapshots(int first_period, int last_period, int pool);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace citenet
