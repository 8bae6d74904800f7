#pragma once

#include <cstddef>
#include <span>

namespace citenet::stats {

double mean(std::span<const double> x);
/// Population standard deviation.
double stddev(std::span<const double> x);

double normal_cdf(double z);

/// One-sample Kolmogorov-Smirnov distance to the standard normal.
double ks_distance_normal(std::span<const double> sample);

struct Correlation {
    double rho = 0.0;
    double p_two_sided = 1.0;
};

/// Spearman rank correlation (average ranks for ties) with the t-approximation
/// p-value on n - 2 degrees of freedom.
Correlation spearman(std::span<const double> x, std::span<const double> y);

/// P(X >= successes) for X ~ Binomial(trials, 1/2).
double sign_test_p(std::size_t successes, std::size_t trials);

double median(std::span<const double> x);

}  // namespace citenet::stats
