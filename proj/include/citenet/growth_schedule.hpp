#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citenet {

struct GrowthParams {
    double n0 = 10.0;     // initial cohort size
    double r0 = 1.0;      // initial reference-list target
    double g_n = 0.033;   // per-period growth rate of cohort size
    double g_r = 0.018;   // per-period growth rate of the reference target
    int T = 150;          // number of periods after the seed batch

    double g_R() const noexcept { return g_n + g_r; }
};

enum class PerturbTarget { beta, g_r, g_n };

std::string_view to_string(PerturbTarget target) noexcept;
std::optional<PerturbTarget> perturb_target_from_string(std::string_view name) noexcept;

/// A parameter change taking effect at period `t_star`.
struct PerturbationEvent {
    int t_star = 0;
    PerturbTarget target = PerturbTarget::beta;
    double new_value = 0.0;

    friend bool operator==(const PerturbationEvent&, const PerturbationEvent&) = default;
};

/// Cohort sizes n(t) and reference targets r(t) for t = 0..T, plus the timed
/// perturbations of a scenario. Rate events bend the exponent from t_star on;
/// the series stays continuous at t_star.
class GrowthSchedule {
public:
    explicit GrowthSchedule(GrowthParams params, std::vector<PerturbationEvent> events = {});

    const GrowthParams& params() const noexcept { return params_; }
    const std::vector<PerturbationEvent>& events() const noexcept { return events_; }
    int horizon() const noexcept { return params_.T; }

    std::size_t cohort_size(int t) const;
    std::size_t ref_target(int t) const;

    // Continuous (unrounded) values.
    double cohort_size_exact(int t) const;
    double ref_target_exact(int t) const;

    /// Growth rate of n(t) in force during period t.
    double g_n_at(int t) const;
    double g_r_at(int t) const;

    /// Redirection fraction in force during period t given the base value.
    double beta_at(int t, double base_beta) const;

private:
    void check_period(int t) const;

    GrowthParams params_;
    std::vector<PerturbationEvent> events_;
    std::vector<double> log_n_;   // ln n(t), t = 0..T
    std::vector<double> log_r_;   // ln r(t)
};

/// Round half up; the discretization used for n(t) and r(t).
std::size_t round_half_up(double x);

struct GrowthFit {
    double rate = 0.0;       // slope g of ln(value) = a + g t
    double stderr_rate = 0.0;
    double intercept = 0.0;  // exp(a)
    std::size_t used = 0;
    std::size_t excluded = 0;  // non-positive values dropped before fitting
};

struct SeriesPoint {
    double t = 0.0;
    double value = 0.0;
};

/// OLS fit of ln(value) against t. Non-positive values are excluded and
/// counted; throws ValidationError with fewer than 3 positive points.
GrowthFit fit_growth_rate(std::span<const SeriesPoint> series);

}  // namespace citenet
