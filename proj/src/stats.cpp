#include "thspec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace thspec::stats {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return pairwise_sum(values) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  std::vector<double> squares(values.size());
  std::transform(values.begin(), values.end(), squares.begin(),
                 [mu](double v) { return (v - mu) * (v - mu); });
  return pairwise_sum(squares) / static_cast<double>(values.size() - 1);
}

double normal_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double f = cdf(sorted[i]);
    sup = std::max({sup, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return sup;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a);
  const double mb = mean(b);
  std::vector<double> cross(a.size()), va(a.size()), vb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    cross[i] = (a[i] - ma) * (b[i] - mb);
    va[i] = (a[i] - ma) * (a[i] - ma);
    vb[i] = (b[i] - mb) * (b[i] - mb);
  }
  const double denom = std::sqrt(pairwise_sum(va) * pairwise_sum(vb));
  return denom > 0.0 ? pairwise_sum(cross) / denom : 0.0;
}

}  // namespace thspec::stats
