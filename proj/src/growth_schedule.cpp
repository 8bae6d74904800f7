#include "citenet/growth_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "citenet/error.hpp"

namespace citenet {

std::string_view to_string(PerturbTarget target) noexcept {
    switch (target) {
        case PerturbTarget::beta: return "beta";
        case PerturbTarget::g_r: return "g_r";
        case PerturbTarget::g_n: return "g_n";
    }
    return "?";
}

std::optional<PerturbTarget> perturb_target_from_string(std::string_view name) noexcept {
    if (name == "beta") return PerturbTarget::beta;
    if (name == "g_r") return PerturbTarget::g_r;
    if (name == "g_n") return PerturbTarget::g_n;
    return std::nullopt;
}

std::size_t round_half_up(double x) {
    if (!(x >= 0.0)) return 0;
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

namespace {

void validate(const GrowthParams& p) {
    if (!(p.n0 >= 1.0) || !std::isfinite(p.n0)) throw ValidationError("n0 must be >= 1");
    if (!(p.r0 > 0.0) || !std::isfinite(p.r0)) throw ValidationError("r0 must be > 0");
    if (p.T < 1) throw ValidationError("T must be >= 1");
    if (!std::isfinite(p.g_n)) throw ValidationError("g_n must be finite");
    if (!std::isfinite(p.g_r)) throw ValidationError("g_r must be finite");
}

void validate(const PerturbationEvent& e, int T) {
    const std::string what = "perturbation (" + std::to_string(e.t_star) + ", " +
                             std::string(to_string(e.target)) + ")";
    if (e.t_star <= 0 || e.t_star > T)
        throw ValidationError(what + ": t_star must lie in (0, T]");
    if (!std::isfinite(e.new_value)) throw ValidationError(what + ": value must be finite");
    if (e.target == PerturbTarget::beta && !(e.new_value >= 0.0 && e.new_value < 1.0))
        throw ValidationError(what + ": beta must lie in [0, 1)");
}

// ln of the series with piecewise-constant rate: the exponent accumulates
// segment by segment.
std::vector<double> accumulate_log(double start, double base_rate, PerturbTarget target,
                                   const std::vector<PerturbationEvent>& events, int T) {
    std::vector<double> out(static_cast<std::size_t>(T) + 1);
    double rate = base_rate;
    auto next = events.begin();
    out[0] = std::log(start);
    for (int t = 1; t <= T; ++t) {
        // rate in force over [t-1, t) is the one set at or before t-1
        while (next != events.end() && next->t_star <= t - 1) {
            if (next->target == target) rate = next->new_value;
            ++next;
        }
        out[static_cast<std::size_t>(t)] = out[static_cast<std::size_t>(t) - 1] + rate;
    }
    return out;
}

}  // namespace

GrowthSchedule::GrowthSchedule(GrowthParams params, std::vector<PerturbationEvent> events)
    : params_(params), events_(std::move(events)) {
    validate(params_);
    for (const auto& e : events_) validate(e, params_.T);
    std::stable_sort(events_.begin(), events_.end(),
                     [](const auto& a, const auto& b) { return a.t_star < b.t_star; });
    for (std::size_t i = 1; i < events_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (events_[j].t_star == events_[i].t_star && events_[j].target == events_[i].target)
                throw ValidationError("duplicate perturbation for " +
                                      std::string(to_string(events_[i].target)) + " at t=" +
                                      std::to_string(events_[i].t_star));
        }
    }
    log_n_ = accumulate_log(params_.n0, params_.g_n, PerturbTarget::g_n, events_, params_.T);
    log_r_ = accumulate_log(params_.r0, params_.g_r, PerturbTarget::g_r, events_, params_.T);
}

void GrowthSchedule::check_period(int t) const {
    if (t < 0 || t > params_.T)
        throw std::out_of_range("period " + std::to_string(t) + " outside [0, " +
                                std::to_string(params_.T) + "]");
}

double GrowthSchedule::cohort_size_exact(int t) const {
    check_period(t);
    return std::exp(log_n_[static_cast<std::size_t>(t)]);
}

double GrowthSchedule::ref_target_exact(int t) const {
    check_period(t);
    return std::exp(log_r_[static_cast<std::size_t>(t)]);
}

std::size_t GrowthSchedule::cohort_size(int t) const { return round_half_up(cohort_size_exact(t)); }

std::size_t GrowthSchedule::ref_target(int t) const { return round_half_up(ref_target_exact(t)); }

double GrowthSchedule::g_n_at(int t) const {
    check_period(t);
    double rate = params_.g_n;
    for (const auto& e : events_)
        if (e.target == PerturbTarget::g_n && e.t_star <= t) rate = e.new_value;
    return rate;
}

double GrowthSchedule::g_r_at(int t) const {
    check_period(t);
    double rate = params_.g_r;
    for (const auto& e : events_)
        if (e.target == PerturbTarget::g_r && e.t_star <= t) rate = e.new_value;
    return rate;
}

double GrowthSchedule::beta_at(int t, double base_beta) const {
    check_period(t);
    double beta = base_beta;
    for (const auto& e : events_)
        if (e.target == PerturbTarget::beta && e.t_star <= t) beta = e.new_value;
    return beta;
}

GrowthFit fit_growth_rate(std::span<const SeriesPoint> series) {
    GrowthFit fit;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(series.size());
    for (const auto& p : series) {
        if (p.value > 0.0 && std::isfinite(p.value))
            pts.emplace_back(p.t, std::log(p.value));
        else
            ++fit.excluded;
    }
    if (pts.size() < 3)
        throw ValidationError("growth-rate fit needs at least 3 positive points, got " +
                              std::to_string(pts.size()));
    fit.used = pts.size();

    const double n = static_cast<double>(pts.size());
    double mean_t = 0.0, mean_y = 0.0;
    for (const auto& [t, y] : pts) {
        mean_t += t;
        mean_y += y;
    }
    mean_t /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [t, y] : pts) {
        sxx += (t - mean_t) * (t - mean_t);
        sxy += (t - mean_t) * (y - mean_y);
    }
    if (sxx <= 0.0) throw ValidationError("growth-rate fit needs at least two distinct t values");
    const double slope = sxy / sxx;
    const double a = mean_y - slope * mean_t;
    double ssr = 0.0;
    for (const auto& [t, y] : pts) {
        const double r = y - (a + slope * t);
        ssr += r * r;
    }
    fit.rate = slope;
    fit.intercept = std::exp(a);
    fit.stderr_rate = std::sqrt(ssr / (n - 2.0) / sxx);
    return fit;
}

}  // namespace citenet
