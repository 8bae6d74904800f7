#include "citenet/refage.hpp"

#include <algorithm>
#include <string>

#include "citenet/error.hpp"

namespace citenet {

RefAgeDistribution::RefAgeDistribution(int window_start, int window_end,
                                       std::vector<std::uint64_t> counts)
    : window_start_(window_start), window_end_(window_end), counts_(std::move(counts)) {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    tail_counts_.assign(counts_.size() + 1, 0);
    for (std::size_t d = counts_.size(); d-- > 0;) tail_counts_[d] = tail_counts_[d + 1] + counts_[d];
    n_refs_ = tail_counts_.empty() ? 0 : tail_counts_[0];
    if (n_refs_ == 0)
        throw ValidationError("no references in citing window [" + std::to_string(window_start) +
                              ", " + std::to_string(window_end) + "]");
    double sum = 0.0;
    for (std::size_t d = 0; d < counts_.size(); ++d)
        sum += static_cast<double>(d) * static_cast<double>(counts_[d]);
    mean_ = sum / static_cast<double>(n_refs_);
}

RefAgeDistribution RefAgeDistribution::from_counts(int window_start, int window_end,
                                                   const std::map<int, std::uint64_t>& counts) {
    std::vector<std::uint64_t> v;
    for (const auto& [d, c] : counts) {
        if (d < 0) throw ValidationError("negative reference distance");
        if (static_cast<std::size_t>(d) >= v.size()) v.resize(static_cast<std::size_t>(d) + 1, 0);
        v[static_cast<std::size_t>(d)] += c;
    }
    return {window_start, window_end, std::move(v)};
}

RefAgeDistribution RefAgeDistribution::from_distances(int window_start, int window_end,
                                                      std::span<const int> distances) {
    std::vector<std::uint64_t> v;
    for (int d : distances) {
        if (d < 0) throw ValidationError("negative reference distance");
        if (static_cast<std::size_t>(d) >= v.size()) v.resize(static_cast<std::size_t>(d) + 1, 0);
        ++v[static_cast<std::size_t>(d)];
    }
    return {window_start, window_end, std::move(v)};
}

std::uint64_t RefAgeDistribution::count(int d) const {
    if (d < 0 || static_cast<std::size_t>(d) >= counts_.size()) return 0;
    return counts_[static_cast<std::size_t>(d)];
}

double RefAgeDistribution::pdf(int d) const {
    return static_cast<double>(count(d)) / static_cast<double>(n_refs_);
}

double RefAgeDistribution::tail_cdf(int d) const {
    if (d <= 0) return 1.0;
    if (static_cast<std::size_t>(d) >= tail_counts_.size()) return 0.0;
    return static_cast<double>(tail_counts_[static_cast<std::size_t>(d)]) /
           static_cast<double>(n_refs_);
}

RefAgeDistribution ref_age_histogram(const CitationNetwork& net, int t_a, int t_b) {
    if (t_a > t_b) throw ValidationError("citing window start after its end");
    std::vector<std::uint64_t> counts;
    const PubId first = net.cohort_range(t_a).first;
    const PubId last = net.cohort_range(t_b).second;
    for (PubId i = first; i < last; ++i) {
        for (PubId j : net.refs(i)) {
            const auto d = static_cast<std::size_t>(net.distance(i, j));
            if (d >= counts.size()) counts.resize(d + 1, 0);
            ++counts[d];
        }
    }
    return {t_a, t_b, std::move(counts)};
}

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

std::optional<int> crossing_point(const RefAgeDistribution& early, const RefAgeDistribution& late,
                                  CrossingMode mode, int start) {
    auto diff = [&](int d) {
        return mode == CrossingMode::lower ? late.pdf(d) - early.pdf(d)
                                           : late.tail_cdf(d) - early.tail_cdf(d);
    };
    const int end = std::max(early.max_distance(), late.max_distance()) + 1;
    start = std::max(start, 0);

    std::vector<int> carried;  // sign per bin with ties carrying the previous sign
    int initial = 0;
    int prev = 0;
    for (int d = start; d <= end; ++d) {
        const int s = sign(diff(d));
        if (s != 0) prev = s;
        if (initial == 0) initial = s;
        carried.push_back(prev);
    }
    if (initial == 0) return std::nullopt;
    for (std::size_t k = 0; k < carried.size(); ++k) {
        if (carried[k] != -initial) continue;
        const bool persists = k + 1 >= carried.size() || carried[k + 1] == -initial;
        if (persists) return start + static_cast<int>(k);
    }
    return std::nullopt;
}

namespace {

std::optional<double> median(std::vector<int> v) {
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? static_cast<double>(v[n / 2]) : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

CrossingReport crossing_report(std::span<const RefAgeDistribution> snapshots) {
    CrossingReport report;
    std::vector<int> lows, highs;
    for (std::size_t k = 1; k < snapshots.size(); ++k) {
        const auto& early = snapshots[k - 1];
        const auto& late = snapshots[k];
        PairCrossing pc;
        pc.early_end = early.window_end();
        pc.late_end = late.window_end();
        pc.lower = crossing_point(early, late, CrossingMode::lower);
        pc.upper = crossing_point(early, late, CrossingMode::upper, pc.lower ? *pc.lower + 1 : 1);
        if (pc.lower) lows.push_back(*pc.lower);
        if (pc.upper) highs.push_back(*pc.upper);
        report.pairs.push_back(pc);
    }
    report.delta_minus = median(lows);
    report.delta_plus = median(highs);
    return report;
}

IntervalFractions interval_fractions(const RefAgeDistribution& dist, int delta_minus,
                                     int delta_plus) {
    if (!(delta_minus < delta_plus))
        throw ValidationError("interval fractions need delta_minus < delta_plus");
    std::uint64_t recent = 0, mid = 0;
    for (int d = 0; d <= dist.max_distance(); ++d) {
        if (d < delta_minus)
            recent += dist.count(d);
        else if (d <= delta_plus)
            mid += dist.count(d);
    }
    const double n = static_cast<double>(dist.n_refs());
    IntervalFractions f;
    // One component is the complement of the other two, so the three sum to exactly 1.
    f.recent = static_cast<double>(recent) / n;
    if (recent + mid == dist.n_refs()) {
        f.mid = 1.0 - f.recent;
    } else {
        f.mid = static_cast<double>(mid) / n;
        f.classic = 1.0 - (f.recent + f.mid);
    }
    return f;
}

double fraction_within(const RefAgeDistribution& dist, int delta) {
    if (delta < 0) throw ValidationError("fraction_within needs delta >= 0");
    return 1.0 - dist.tail_cdf(delta + 1);
}

}  // namespace citenet
