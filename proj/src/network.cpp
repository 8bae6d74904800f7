#include "citenet/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "citenet/error.hpp"

namespace citenet {

CitationNetwork CitationNetwork::from_lists(std::vector<int> cohorts,
                                            const std::vector<std::vector<PubId>>& refs,
                                            bool allow_forward) {
    if (cohorts.size() != refs.size())
        throw ValidationError("cohort and reference list counts differ");
    if (!std::is_sorted(cohorts.begin(), cohorts.end()))
        throw ValidationError("cohorts must be non-decreasing in id");
    CitationNetwork net;
    net.cohort_ = std::move(cohorts);
    const auto n = net.cohort_.size();
    net.offset_.reserve(n + 1);
    std::vector<PubId> sorted;
    for (std::size_t i = 0; i < n; ++i) {
        sorted.assign(refs[i].begin(), refs[i].end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("publication " + std::to_string(i) + " has duplicate references");
        for (PubId j : refs[i]) {
            if (j >= n)
                throw ValidationError("publication " + std::to_string(i) + " cites unknown id " +
                                      std::to_string(j));
            if (j == i)
                throw ValidationError("publication " + std::to_string(i) + " cites itself");
            if (!allow_forward && net.cohort_[j] > net.cohort_[i])
                throw ValidationError("publication " + std::to_string(i) +
                                      " cites a later cohort (id " + std::to_string(j) + ")");
            net.refs_.push_back(j);
        }
        net.offset_.push_back(net.refs_.size());
    }
    return net;
}

PubId CitationNetwork::add_publication(int cohort, std::span<const PubId> refs) {
    if (!cohort_.empty() && cohort < cohort_.back())
        throw std::logic_error("publications must be appended in cohort order");
    const auto id = static_cast<PubId>(cohort_.size());
    for (PubId j : refs) {
        if (j >= id || cohort_[j] >= cohort)
            throw std::logic_error("reference must point to an earlier cohort");
    }
    cohort_.push_back(cohort);
    refs_.insert(refs_.end(), refs.begin(), refs.end());
    offset_.push_back(refs_.size());
    return id;
}

std::pair<PubId, PubId> CitationNetwork::cohort_range(int t) const {
    auto lo = std::lower_bound(cohort_.begin(), cohort_.end(), t);
    auto hi = std::upper_bound(lo, cohort_.end(), t);
    return {static_cast<PubId>(lo - cohort_.begin()), static_cast<PubId>(hi - cohort_.begin())};
}

CitationIndex::CitationIndex(const CitationNetwork& net) : net_(&net) {
    const auto n = net.size();
    offset_.assign(n + 1, 0);
    for (PubId i = 0; i < n; ++i)
        for (PubId j : net.refs(i)) ++offset_[j + 1];
    for (std::size_t k = 0; k < n; ++k) offset_[k + 1] += offset_[k];
    citers_.resize(net.link_count());
    std::vector<std::size_t> cursor(offset_.begin(), offset_.end() - 1);
    // citing ids are visited in increasing order, so each list ends up sorted
    for (PubId i = 0; i < n; ++i)
        for (PubId j : net.refs(i)) citers_[cursor[j]++] = i;
}

}  // namespace citenet
