#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace citenet {

using PubId = std::uint32_t;

/// Reference tallies of one citing period.
struct PeriodStats {
    std::size_t direct = 0;      // references made by direct citation
    std::size_t redirected = 0;  // references made by redirection
    std::size_t target = 0;      // r(t)

    std::size_t total() const noexcept { return direct + redirected; }
};

/// Publications with cohort stamps and outgoing reference lists, stored in
/// compressed rows. Ids are dense and cohorts are non-decreasing in id, so
/// every cohort occupies a contiguous id range.
class CitationNetwork {
public:
    CitationNetwork() = default;

    /// Build from per-publication cohorts and reference lists. Cohorts must be
    /// non-decreasing. Every referenced id must exist, lists must be free of
    /// duplicates and self references. With `allow_forward` false every cited
    /// cohort must not exceed the citing cohort.
    static CitationNetwork from_lists(std::vector<int> cohorts,
                                      const std::vector<std::vector<PubId>>& refs,
                                      bool allow_forward = false);

    /// Append a publication whose references all point at existing ids of
    /// strictly earlier cohorts.
    PubId add_publication(int cohort, std::span<const PubId> refs);

    std::size_t size() const noexcept { return cohort_.size(); }
    std::size_t link_count() const noexcept { return refs_.size(); }
    bool empty() const noexcept { return cohort_.empty(); }

    int cohort(PubId id) const { return cohort_[id]; }
    std::span<const int> cohorts() const noexcept { return cohort_; }
    std::span<const PubId> refs(PubId id) const {
        return {refs_.data() + offset_[id], refs_.data() + offset_[id + 1]};
    }

    int first_cohort() const noexcept { return cohort_.empty() ? 0 : cohort_.front(); }
    int last_cohort() const noexcept { return cohort_.empty() ? -1 : cohort_.back(); }

    /// Half-open id range [first, last) of cohort t; empty if absent.
    std::pair<PubId, PubId> cohort_range(int t) const;
    std::size_t cohort_count(int t) const {
        auto [a, b] = cohort_range(t);
        return b - a;
    }

    /// Reference distance of an edge, clamped at 0 for forward-dated edges.
    int distance(PubId citing, PubId cited) const {
        const int d = cohort_[citing] - cohort_[cited];
        return d < 0 ? 0 : d;
    }

    std::vector<PeriodStats>& period_stats() noexcept { return stats_; }
    const std::vector<PeriodStats>& period_stats() const noexcept { return stats_; }

    friend bool operator==(const CitationNetwork& a, const CitationNetwork& b) {
        return a.cohort_ == b.cohort_ && a.offset_ == b.offset_ && a.refs_ == b.refs_;
    }

private:
    std::vector<int> cohort_;
    std::vector<std::size_t> offset_{0};
    std::vector<PubId> refs_;
    std::vector<PeriodStats> stats_;  // indexed by period; empty for ingested data
};

/// Incoming edges of every publication, grouped by cited id. Built once per
/// network and shared by the analyses.
class CitationIndex {
public:
    explicit CitationIndex(const CitationNetwork& net);

    std::span<const PubId> citers(PubId id) const {
        return {citers_.data() + offset_[id], citers_.data() + offset_[id + 1]};
    }
    std::size_t indegree(PubId id) const { return offset_[id + 1] - offset_[id]; }
    const CitationNetwork& network() const noexcept { return *net_; }

private:
    const CitationNetwork* net_;
    std::vector<std::size_t> offset_;
    std::vector<PubId> citers_;
};

}  // namespace citenet
