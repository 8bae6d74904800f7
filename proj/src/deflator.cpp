#include "citenet/deflator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "citenet/error.hpp"
#include "citenet/growth_schedule.hpp"

namespace citenet {

DeflatorSeries::DeflatorSeries(std::map<int, double> n_a, int baseline_year)
    : n_a_(std::move(n_a)), baseline_(baseline_year) {
    for (const auto& [year, n] : n_a_)
        if (!(n > 0.0) || !std::isfinite(n))
            throw ValidationError("n_a(" + std::to_string(year) + ") must be > 0");
    if (!has_year(baseline_))
        throw ValidationError("baseline year " + std::to_string(baseline_) +
                              " missing from the deflator series");
}

double DeflatorSeries::factor(int year) const {
    auto it = n_a_.find(year);
    if (it == n_a_.end())
        throw ValidationError("year " + std::to_string(year) + " missing from the deflator series");
    return n_a_.at(baseline_) / it->second;
}

DeflatedCitations deflate_citations(const std::map<int, double>& delta_c,
                                    const DeflatorSeries& series, std::optional<int> census_year) {
    DeflatedCitations out;
    for (const auto& [year, c] : delta_c) {
        if (c < 0.0) throw ValidationError("negative citation increment in " + std::to_string(year));
        const double s = c * series.factor(year);
        out.increments[year] = s;
        if (!census_year || year <= *census_year) out.total += s;
    }
    return out;
}

int h_index(std::span<const double> totals) {
    std::vector<double> v(totals.begin(), totals.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    int h = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] >= static_cast<double>(k + 1))
            h = static_cast<int>(k + 1);
        else
            break;
    }
    return h;
}

int CareerProfile::y0() const {
    if (pubs.empty()) throw ValidationError("career " + researcher + " has no publications");
    return std::min_element(pubs.begin(), pubs.end(),
                            [](const auto& a, const auto& b) { return a.year < b.year; })
        ->year;
}

CareerMetrics career_metrics(const CareerProfile& profile, const DeflatorSeries& series,
                             std::optional<int> census_year) {
    CareerMetrics m;
    m.y0 = profile.y0();
    std::vector<double> raw, deflated;
    raw.reserve(profile.pubs.size());
    deflated.reserve(profile.pubs.size());
    for (const auto& pub : profile.pubs) {
        double c = 0.0;
        for (const auto& [year, n] : pub.cites) {
            if (year < pub.year)
                throw ValidationError("publication " + pub.id + " cited in " +
                                      std::to_string(year) + " before it appeared");
            if (!census_year || year <= *census_year) c += n;
        }
        raw.push_back(c);
        deflated.push_back(deflate_citations(pub.cites, series, census_year).total);
    }
    m.h = h_index(raw);
    m.h_deflated = h_index(deflated);
    for (double c : raw) m.c_total += c;
    for (double s : deflated) m.c_total_deflated += s;
    if (m.h > 0) m.rho_h = static_cast<double>(m.h_deflated) / m.h;
    if (m.c_total > 0.0) m.rho_c = m.c_total_deflated / m.c_total;
    return m;
}

InflationFit fit_g10(std::span<const std::pair<double, double>> cohort_means) {
    if (cohort_means.size() < 3) throw ValidationError("g10 fit needs at least 3 cohorts");
    std::vector<SeriesPoint> pts;
    for (const auto& [t, rho] : cohort_means) {
        if (!(rho > 0.0))
            throw ValidationError("g10 fit needs rho > 0, got " + std::to_string(rho) +
                                  " for cohort " + std::to_string(t));
        pts.push_back({(2000.0 - t) / 10.0, rho});
    }
    const auto fit = fit_growth_rate(pts);
    return {fit.intercept, fit.rate, fit.stderr_rate, pts.size()};
}

std::vector<std::pair<double, double>> cohort_means(
    std::span<const std::pair<int, double>> y0_and_rho, int width) {
    if (width < 1) throw ValidationError("cohort width must be >= 1");
    std::map<int, std::pair<double, std::size_t>> acc;
    for (const auto& [y0, rho] : y0_and_rho) {
        const int start = static_cast<int>(std::floor(static_cast<double>(y0) / width)) * width;
        auto& [sum, n] = acc[start];
        sum += rho;
        ++n;
    }
    std::vector<std::pair<double, double>> out;
    for (const auto& [start, sn] : acc)
        out.emplace_back(static_cast<double>(start), sn.first / static_cast<double>(sn.second));
    return out;
}

}  // namespace citenet
