#include "thspec/binary.hpp"

#include <cmath>

#include "thspec/error.hpp"

namespace thspec {

void BinaryModelParams::validate() const {
  if (n < 2) throw ConfigError("binary model: n must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("binary model: p must lie in (0, 1)");
  if (!(theta >= 0.0 && theta < 1.0)) throw ConfigError("binary model: theta must lie in [0, 1)");
}

LambdaPair lambda_pm(std::size_t k, std::size_t l) {
  if (k + l == 0) throw ConfigError("lambda_pm: k + l must be positive");
  const double kd = static_cast<double>(k);
  const double ld = static_cast<double>(l);
  const double disc = (kd - 1.0) * (kd - 1.0) + 4.0 * kd * ld;
  const double plus = 0.5 * ((kd - 1.0) + std::sqrt(disc));
  // Vieta avoids cancellation in the smaller root.
  double minus = plus > 0.0 ? -(kd * ld) / plus : (kd - 1.0) - plus;
  if (minus == 0.0) minus = 0.0;
  return {minus, plus};
}

std::vector<double> binary_hidden_values(std::size_t k, std::size_t l) {
  std::vector<double> values(k, 1.0);
  values.insert(values.end(), l, 0.0);
  return values;
}

SpectralDistribution binary_sample_spectrum(std::size_t k, std::size_t l) {
  const std::size_t n = k + l;
  if (n == 0) throw ConfigError("binary_sample_spectrum: k + l must be positive");
  if (n == 1) return SpectralDistribution::exact(1, {{0.0, 1}});
  if (k == 0 || l == 0) {
    const ThresholdGraph g(binary_hidden_values(k, l), 0.0, ModelVariant::Loopless);
    return spectral_distribution(decompose(creation_sequence(g)));
  }

  const auto [minus, plus] = lambda_pm(k, l);
  const auto merged = merge_atoms({{-1.0, static_cast<double>(k - 1)},
                                   {0.0, static_cast<double>(l - 1)},
                                   {minus, 1.0},
                                   {plus, 1.0}});
  std::vector<std::pair<double, std::size_t>> atoms;
  for (const auto& [value, count] : merged)
    atoms.emplace_back(value, static_cast<std::size_t>(std::llround(count)));
  return SpectralDistribution::exact(n, std::move(atoms));
}

double binomial_pmf(std::size_t n, std::size_t k, double p) {
  if (k > n) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double log_choose = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
  const double log_mass = (k == 0 ? 0.0 : kd * std::log(p)) + (k == n ? 0.0 : (nd - kd) * std::log1p(-p));
  return std::exp(log_choose + log_mass);
}

SpectralDistribution binary_mean_spectrum(const BinaryModelParams& params) {
  params.validate();
  const std::size_t n = params.n;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(2 * n + 4);
  atoms.emplace_back(-1.0, params.p - inv_n);
  atoms.emplace_back(0.0, 1.0 - params.p - inv_n);
  for (std::size_t k = 0; k <= n; ++k) {
    const double w = binomial_pmf(n, k, params.p) * inv_n;
    const auto [minus, plus] = lambda_pm(k, n - k);
    atoms.emplace_back(minus, w);
    atoms.emplace_back(plus, w);
  }
  // Underflowed binomial tails carry no mass.
  return SpectralDistribution::mixture(n, merge_atoms(std::move(atoms), 1e-300));
}

SpectralDistribution binary_limit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("binary limit: p must lie in (0, 1)");
  return SpectralDistribution::mixture(0, {{-1.0, p}, {0.0, 1.0 - p}});
}

}  // namespace thspec
