#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "citenet/network.hpp"

namespace citenet {

/// Histogram of reference distances (1-period bins) for references made by
/// publications of citing cohorts [window_start, window_end].
class RefAgeDistribution {
public:
    /// counts[d] = number of references at distance d.
    RefAgeDistribution(int window_start, int window_end, std::vector<std::uint64_t> counts);

    static RefAgeDistribution from_counts(int window_start, int window_end,
                                          const std::map<int, std::uint64_t>& counts);
    static RefAgeDistribution from_distances(int window_start, int window_end,
                                             std::span<const int> distances);

    int window_start() const noexcept { return window_start_; }
    int window_end() const noexcept { return window_end_; }
    std::uint64_t n_refs() const noexcept { return n_refs_; }
    /// Largest distance bin (the histogram is empty above it).
    int max_distance() const noexcept { return static_cast<int>(counts_.size()) - 1; }
    std::uint64_t count(int d) const;

    double pdf(int d) const;
    /// P(distance >= d); 1 for d <= 0.
    double tail_cdf(int d) const;
    double mean() const noexcept { return mean_; }

private:
    int window_start_;
    int window_end_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> tail_counts_;  // suffix sums of counts_
    std::uint64_t n_refs_ = 0;
    double mean_ = 0.0;
};

/// Histogram of references made by cohorts in [t_a, t_b]. Throws
/// ValidationError when the window holds no references.
RefAgeDistribution ref_age_histogram(const CitationNetwork& net, int t_a, int t_b);

enum class CrossingMode { lower, upper };

/// First distance >= start where the sign of (late - early) flips relative to
/// its initial sign and holds for 2 consecutive bins. Lower mode compares the
/// pdfs, upper mode the tail cdfs. Bins where both agree carry the previous
/// sign. nullopt when no flip exists, e.g. identical inputs.
std::optional<int> crossing_point(const RefAgeDistribution& early, const RefAgeDistribution& late,
                                  CrossingMode mode, int start = 1);

struct PairCrossing {
    int early_end = 0;
    int late_end = 0;
    std::optional<int> lower;
    std::optional<int> upper;  // searched above `lower` when it exists
};

struct CrossingReport {
    std::optional<double> delta_minus;  // median over defined pair crossings
    std::optional<double> delta_plus;
    std::vector<PairCrossing> pairs;
};

/// Crossings of each consecutive snapshot pair, aggregated by median.
/// Snapshots must be ordered by time.
CrossingReport crossing_report(std::span<const RefAgeDistribution> snapshots);

struct IntervalFractions {
    double recent = 0.0;   // distance < delta_minus
    double mid = 0.0;      // delta_minus <= distance <= delta_plus
    double classic = 0.0;  // distance > delta_plus
};

IntervalFractions interval_fractions(const RefAgeDistribution& dist, int delta_minus,
                                     int delta_plus);

/// F(distance <= delta) = 1 - tail_cdf(delta + 1).
double fraction_within(const RefAgeDistribution& dist, int delta);

}  // namespace citenet
