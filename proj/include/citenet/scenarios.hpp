#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "citenet/config.hpp"

namespace citenet {

/// Paired perturbation experiments: each runs a control and a perturbed arm
/// on the same seeds and compares the cohorts that follow the perturbation.
enum class ScenarioKind { beta_jump, gr_jump, gn_freeze, no_redirect };

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_string(const std::string& name);
std::vector<ScenarioKind> all_scenarios();

struct ScenarioDesign {
    ScenarioKind kind{};
    ScenarioConfig control;
    ScenarioConfig perturbed;
    int compare_first = 0;  // cohorts [compare_first, compare_last] are compared
    int compare_last = 0;
};

/// Base setting: T = 200, c_cross = 6, alpha = 5, beta = 0.2, perturbation at 165.
ScenarioDesign scenario_design(ScenarioKind kind);

struct CohortRow {
    int t = 0;
    std::size_t n = 0;
    double mean_citations = 0.0;  // windowed
    double gini = 0.0;
    double uncited = 0.0;         // F(c <= 0)
    double c99 = 0.0;
    double within_delta = 0.0;    // share of the cohort's references at distance <= delta
    double mean_ref_distance = 0.0;
};

struct ArmRun {
    std::vector<CohortRow> rows;
};

/// Per-cohort rows of one simulated network.
ArmRun cohort_rows(const ScenarioConfig& cfg, std::uint64_t seed);

struct SeedComparison {
    std::uint64_t seed = 0;
    double gini_control = 0.0;  // averages over the compared cohorts
    double gini_perturbed = 0.0;
    double citations_control = 0.0;
    double citations_perturbed = 0.0;
    double within_control = 0.0;
    double within_perturbed = 0.0;
};

struct SignTest {
    std::size_t increases = 0;
    std::size_t trials = 0;
    double p_increase = 1.0;  // one-sided P(X >= increases)
    double p_decrease = 1.0;  // one-sided P(X <= increases)
};

SignTest sign_test(std::span<const double> differences);

struct ScenarioResult {
    ScenarioDesign design;
    std::vector<std::uint64_t> seeds;
    std::vector<ArmRun> control;    // per seed
    std::vector<ArmRun> perturbed;  // per seed
    std::vector<SeedComparison> comparisons;
    SignTest gini;
    SignTest citations;
    SignTest within;
};

ScenarioResult run_scenario(const ScenarioDesign& design, std::span<const std::uint64_t> seeds,
                            unsigned threads = 1);

void write_scenario_csv(std::ostream& out, const ScenarioResult& result);
nlohmann::json scenario_summary(const ScenarioResult& result);

}  // namespace citenet
