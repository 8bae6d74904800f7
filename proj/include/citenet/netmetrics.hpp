#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "citenet/network.hpp"

namespace citenet {

/// Citations received by each publication of one cohort from citing cohorts
/// in [cohort, cohort + window].
struct WindowedTally {
    int cohort = 0;
    int window = 0;
    std::vector<double> counts;   // in cohort id order
    bool right_censored = false;  // cohort + window lies past the last observed period
};

WindowedTally windowed_citations(const CitationIndex& index, int cohort, int window);

/// Citations received by cohort `cohort` from citing cohorts <= tau.
std::vector<double> citations_up_to(const CitationIndex& index, int cohort, int tau);

// Inequality and distribution statistics over one cohort's counts. All throw
// ValidationError on empty input.

/// Mean absolute pairwise difference over twice the mean; 0 if the mean is 0.
double gini(std::span<const double> counts);
/// n <c^2> / C^2 with C the total. Throws if every count is zero.
double hhi(std::span<const double> counts);
/// Nearest-rank percentile: the sorted value at rank ceil(q n).
double percentile_value(std::span<const double> counts, double q);
double fraction_at_most(std::span<const double> counts, double threshold);
/// Share of all citations held by the ceil(q n) most cited; 0 if none.
double top_share(std::span<const double> counts, double q);

struct ZScores {
    std::vector<double> z;   // one per cited publication, in input order
    std::size_t excluded = 0;  // publications with zero citations
    double mu_ln = 0.0;
    double sigma_ln = 0.0;     // population standard deviation of ln c
};

/// Log-normal standardization over the cited subset. Needs >= 2 cited.
ZScores z_normalize(std::span<const double> counts);

/// Mean local clustering coefficient of the undirected projection; nodes of
/// degree < 2 contribute 0.
double clustering_coefficient(const CitationNetwork& net);

struct Lifecycle {
    int cohort = 0;
    std::vector<double> mean_citations;  // indexed by age
    int peak_age = 0;
    double rate = 0.0;        // fitted exponential rate of the post-peak tail
    double rate_stderr = 0.0;
    std::optional<double> decay_time;  // -1/rate when rate < 0
    bool decaying() const noexcept { return decay_time.has_value(); }
};

/// Fit of an age series: peak, then an exponential fit over
/// ages [peak, peak + fit_span]. Needs fit_span periods past the peak.
Lifecycle fit_lifecycle(std::vector<double> mean_by_age, int fit_span = 10);

/// Mean per-publication citations of `cohort` at each age, plus its fit.
Lifecycle lifecycle(const CitationIndex& index, int cohort, int fit_span = 10);

struct CohortMetrics {
    int cohort = 0;
    std::size_t n = 0;
    double gini = 0.0;
    double gini_cited_only = 0.0;
    std::optional<double> hhi;
    std::map<double, double> uncited_fracs;  // C -> F(c <= C)
    std::map<double, double> percentiles;    // q -> C(q)
    double top_share = 0.0;
    double mean = 0.0;
    std::optional<double> mu_ln;
    std::optional<double> sigma_ln;
};

struct MetricsOptions {
    int window = 5;
    std::vector<double> thresholds{0, 1, 2, 5, 10};
    std::vector<double> percentiles{0.5, 0.75, 0.9, 0.95, 0.99};
    double top_q = 0.01;
    std::optional<int> tau;  // tally time for top share; default: last period
};

/// Statistics of one cohort's windowed counts; top share uses counts up to tau.
CohortMetrics cohort_metrics(const CitationIndex& index, int cohort, const MetricsOptions& opts);

}  // namespace citenet
