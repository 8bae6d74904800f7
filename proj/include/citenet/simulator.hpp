#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "citenet/growth_schedule.hpp"
#include "citenet/network.hpp"
#include "citenet/rng.hpp"
#include "citenet/sum_tree.hpp"

namespace citenet {

struct ModelParams {
    double c_cross = 7.0;  // citation offset
    double alpha = 5.0;    // obsolescence exponent on n(t_j)
    double beta = 0.2;     // fraction of references made by redirection
    std::uint64_t seed = 1;

    /// Mean redirected references per direct citation.
    double lambda() const noexcept { return lambda_for(beta); }
    static double lambda_for(double beta) noexcept { return beta / (1.0 - beta); }
};

/// Throws ValidationError naming the violated bound.
void validate(const ModelParams& params);

/// (c_cross + c) * n_birth^alpha. Overflows to inf for large cohorts; the
/// simulator uses relative_attachment_weight instead.
double attachment_weight(double citations, double n_at_birth, const ModelParams& params);

/// Attachment weight divided by n_ref^alpha. Ratios between candidates are
/// the same as for attachment_weight while magnitudes stay bounded.
double relative_attachment_weight(double citations, double n_at_birth, double n_ref,
                                  const ModelParams& params);

/// One candidate drawn proportional to the weights held in `eligible`.
/// Throws std::logic_error if no candidate has positive weight.
PubId sample_direct_target(const SumTree& eligible, Rng& rng);

/// Redirection step: x ~ Binomial(m, min(1, lambda/m)) with m = |cited_refs|,
/// then x distinct entries of `cited_refs` chosen uniformly, minus any already
/// in `already_cited`. Output order is the draw order.
std::vector<PubId> redirect_sample(std::span<const PubId> cited_refs, double lambda,
                                   std::span<const PubId> already_cited, Rng& rng);

struct ReferenceList {
    std::vector<PubId> refs;
    std::size_t direct = 0;
    std::size_t redirected = 0;
};

/// Grows a citation network one period at a time. Citation counts feeding the
/// attachment weights are frozen at the start of each period, so publications
/// of the same cohort never cite each other.
class Simulator {
public:
    Simulator(GrowthSchedule schedule, ModelParams params);

    /// Period that the next call to step() will add.
    int next_period() const noexcept { return next_period_; }
    bool done() const noexcept { return next_period_ > schedule_.horizon(); }

    /// Add the cohort of next_period().
    void step();
    void run() {
        while (!done()) step();
    }

    const CitationNetwork& network() const noexcept { return net_; }
    CitationNetwork take_network() && { return std::move(net_); }
    const GrowthSchedule& schedule() const noexcept { return schedule_; }
    const ModelParams& params() const noexcept { return params_; }

    /// Total citations received so far, per publication.
    std::span<const std::uint32_t> citation_counts() const noexcept { return citations_; }

    /// Reference list of one new publication of period t against the frozen
    /// weights currently loaded. Exposed for testing; step() calls it.
    ReferenceList build_reference_list(std::size_t target, double lambda, Rng& rng);

    /// Load frozen attachment weights of all existing publications.
    void load_weights();

private:
    GrowthSchedule schedule_;
    ModelParams params_;
    CitationNetwork net_;
    std::vector<std::uint32_t> citations_;
    std::vector<double> base_weight_;
    SumTree tree_;
    int next_period_ = 1;
};

/// Seeds n(0) reference-free publications at t = 0, then adds cohorts
/// t = 1..T. Deterministic given params.seed.
CitationNetwork simulate(const GrowthSchedule& schedule, const ModelParams& params);

}  // namespace citenet
