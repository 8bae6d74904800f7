#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace citenet {

/// Field publication counts n_a(year) and the baseline year that deflated
/// citations are expressed in.
class DeflatorSeries {
public:
    DeflatorSeries(std::map<int, double> n_a, int baseline_year = 2010);

    int baseline_year() const noexcept { return baseline_; }
    const std::map<int, double>& counts() const noexcept { return n_a_; }
    bool has_year(int year) const { return n_a_.count(year) != 0; }

    /// n_a(baseline) / n_a(year). Throws ValidationError naming a missing year.
    double factor(int year) const;

private:
    std::map<int, double> n_a_;
    int baseline_;
};

struct DeflatedCitations {
    std::map<int, double> increments;  // year -> deflated count
    double total = 0.0;
};

/// Rescale yearly citation increments into baseline-year units. Years after
/// `census_year`, when given, are left out of the total.
DeflatedCitations deflate_citations(const std::map<int, double>& delta_c,
                                    const DeflatorSeries& series,
                                    std::optional<int> census_year = std::nullopt);

/// Largest h such that at least h entries are >= h. Entries may be real.
int h_index(std::span<const double> totals);

struct CareerPublication {
    std::string id;
    int year = 0;
    std::map<int, double> cites;  // citation year -> count
};

struct CareerProfile {
    std::string researcher;
    std::vector<CareerPublication> pubs;

    /// First publication year.
    int y0() const;
};

struct CareerMetrics {
    int y0 = 0;
    int h = 0;
    int h_deflated = 0;
    double c_total = 0.0;
    double c_total_deflated = 0.0;
    std::optional<double> rho_h;  // absent when h == 0
    std::optional<double> rho_c;  // absent when c_total == 0
};

CareerMetrics career_metrics(const CareerProfile& profile, const DeflatorSeries& series,
                             std::optional<int> census_year = std::nullopt);

struct InflationFit {
    double rho0 = 0.0;
    double g10 = 0.0;
    double stderr_g10 = 0.0;
    std::size_t cohorts = 0;
};

/// Least-squares fit of rho(t) = rho0 exp[g10 (2000 - t) / 10] through the
/// log. Needs >= 3 points, all rho > 0.
InflationFit fit_g10(std::span<const std::pair<double, double>> cohort_means);

/// Mean rho per `width`-year cohort of first-publication year, keyed by the
/// cohort's start year (1940, 1950, ...).
std::vector<std::pair<double, double>> cohort_means(
    std::span<const std::pair<int, double>> y0_and_rho, int width = 10);

}  // namespace citenet
