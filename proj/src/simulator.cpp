#include "citenet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "citenet/error.hpp"

namespace citenet {

void validate(const ModelParams& p) {
    if (!(p.c_cross > 0.0) || !std::isfinite(p.c_cross))
        throw ValidationError("c_cross must be > 0");
    if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) throw ValidationError("alpha must be >= 0");
    if (!(p.beta >= 0.0 && p.beta < 1.0)) throw ValidationError("beta must lie in [0, 1)");
}

double attachment_weight(double citations, double n_at_birth, const ModelParams& params) {
    return (params.c_cross + citations) * std::pow(n_at_birth, params.alpha);
}

double relative_attachment_weight(double citations, double n_at_birth, double n_ref,
                                  const ModelParams& params) {
    return (params.c_cross + citations) * std::pow(n_at_birth / n_ref, params.alpha);
}

PubId sample_direct_target(const SumTree& eligible, Rng& rng) {
    if (!(eligible.total() > 0.0)) throw std::logic_error("no eligible publication to cite");
    return static_cast<PubId>(eligible.sample(rng));
}

std::vector<PubId> redirect_sample(std::span<const PubId> cited_refs, double lambda,
                                   std::span<const PubId> already_cited, Rng& rng) {
    std::vector<PubId> out;
    const std::size_t m = cited_refs.size();
    if (m == 0 || !(lambda > 0.0)) return out;
    const double p = std::min(1.0, lambda / static_cast<double>(m));
    std::binomial_distribution<int> binom(static_cast<int>(m), p);
    const auto x = static_cast<std::size_t>(binom(rng));
    if (x == 0) return out;

    // partial Fisher-Yates over a copy of the list
    std::vector<PubId> pool(cited_refs.begin(), cited_refs.end());
    out.reserve(x);
    for (std::size_t k = 0; k < x; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, m - 1);
        std::swap(pool[k], pool[pick(rng)]);
        const PubId cand = pool[k];
        if (std::find(already_cited.begin(), already_cited.end(), cand) == already_cited.end())
            out.push_back(cand);
    }
    return out;
}

Simulator::Simulator(GrowthSchedule schedule, ModelParams params)
    : schedule_(std::move(schedule)), params_(params) {
    validate(params_);
    const std::size_t n0 = schedule_.cohort_size(0);
    for (std::size_t i = 0; i < n0; ++i) net_.add_publication(0, {});
    citations_.assign(n0, 0);
    net_.period_stats().assign(static_cast<std::size_t>(schedule_.horizon()) + 1, PeriodStats{});
}

void Simulator::load_weights() {
    const std::size_t n = net_.size();
    const int last = net_.last_cohort();
    // n_ref: the largest cohort so far, so every factor stays <= 1
    double n_ref = 1.0;
    for (int k = 0; k <= last; ++k)
        n_ref = std::max(n_ref, static_cast<double>(schedule_.cohort_size(k)));
    std::vector<double> factor(static_cast<std::size_t>(last) + 1);
    for (int k = 0; k <= last; ++k)
        factor[static_cast<std::size_t>(k)] =
            std::pow(static_cast<double>(schedule_.cohort_size(k)) / n_ref, params_.alpha);

    base_weight_.resize(n);
    for (PubId j = 0; j < n; ++j)
        base_weight_[j] = (params_.c_cross + citations_[j]) *
                          factor[static_cast<std::size_t>(net_.cohort(j))];
    tree_.assign(base_weight_);
}

ReferenceList Simulator::build_reference_list(std::size_t target, double lambda, Rng& rng) {
    ReferenceList out;
    auto& refs = out.refs;
    refs.reserve(target);
    while (refs.size() < target && tree_.total() > 0.0) {
        const PubId j = sample_direct_target(tree_, rng);
        refs.push_back(j);
        tree_.set(j, 0.0);
        ++out.direct;
        if (refs.size() >= target) break;
        for (PubId k : redirect_sample(net_.refs(j), lambda, refs, rng)) {
            if (refs.size() >= target) break;  // fixed upper limit on the list
            refs.push_back(k);
            tree_.set(k, 0.0);
            ++out.redirected;
        }
    }
    for (PubId k : refs) tree_.set(k, base_weight_[k]);
    return out;
}

void Simulator::step() {
    if (done()) throw std::logic_error("simulation already complete");
    const int t = next_period_;
    const double beta = schedule_.beta_at(t, params_.beta);
    const double lambda = ModelParams::lambda_for(beta);
    const std::size_t n_t = schedule_.cohort_size(t);
    const std::size_t r_t = schedule_.ref_target(t);

    load_weights();
    Rng rng = make_substream(params_.seed, static_cast<std::uint64_t>(t));
    auto& stats = net_.period_stats()[static_cast<std::size_t>(t)];
    stats.target = r_t;
    for (std::size_t i = 0; i < n_t; ++i) {
        ReferenceList list = build_reference_list(r_t, lambda, rng);
        net_.add_publication(t, list.refs);
        for (PubId j : list.refs) ++citations_[j];
        stats.direct += list.direct;
        stats.redirected += list.redirected;
    }
    citations_.resize(net_.size(), 0);
    ++next_period_;
}

CitationNetwork simulate(const GrowthSchedule& schedule, const ModelParams& params) {
    Simulator sim(schedule, params);
    sim.run();
    return std::move(sim).take_network();
}

}  // namespace citenet
