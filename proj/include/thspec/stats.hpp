#pragma once

#include <functional>
#include <span>

namespace thspec::stats {

// Pairwise summation; result independent of thread schedule.
double pairwise_sum(std::span<const double> values);
double mean(std::span<const double> values);
// Unbiased (n - 1) sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> values);

double normal_cdf(double x, double mean, double variance);

// sup_x |F_n(x) - F(x)| for the empirical CDF of `values`.
double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf);

// Pearson correlation of paired samples; 0 when either side is constant.
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace thspec::stats
