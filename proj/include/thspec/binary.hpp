#pragma once

#include <cstddef>
#include <vector>

#include "thspec/spectrum.hpp"

namespace thspec {

/// Binary threshold model: X ~ Bernoulli(p), 0 <= theta < 1. Vertices with
/// X = 1 form a clique joined to everything; X = 0 vertices are independent.
struct BinaryModelParams {
  std::size_t n = 2;
  double p = 0.5;
  double theta = 0.0;  // only its range matters

  void validate() const;
};

struct LambdaPair {
  double minus;
  double plus;
};

/// Roots of lambda^2 - (k-1) lambda - k l, i.e. eigenvalues of [[k-1, l], [k, 0]].
LambdaPair lambda_pm(std::size_t k, std::size_t l);

/// Hidden values realising k ones followed by l zeros.
std::vector<double> binary_hidden_values(std::size_t k, std::size_t l);

/// Spectrum of a binary-model graph with k ones and l zeros. Uses the four-atom
/// closed form when k, l >= 1 and the general block path otherwise.
SpectralDistribution binary_sample_spectrum(std::size_t k, std::size_t l);

/// Mean spectral distribution over Binomial(n, p) partitions (mixture mode).
SpectralDistribution binary_mean_spectrum(const BinaryModelParams& params);

/// p * delta_{-1} + (1 - p) * delta_0.
SpectralDistribution binary_limit(double p);

double binomial_pmf(std::size_t n, std::size_t k, double p);

}  // namespace thspec
