#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "thspec/rng.hpp"

namespace thspec {

struct Bernoulli {
  double p = 0.5;
};

/// Finite pmf; `values` strictly increasing, `probs` summing to 1.
struct DiscretePmf {
  std::vector<double> values;
  std::vector<double> probs;
};

struct Uniform {
  double a = -1.0;
  double b = 1.0;
};

struct Gaussian {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Law of the hidden variable X.
using DistributionSpec = std::variant<Bernoulli, DiscretePmf, Uniform, Gaussian>;

std::string_view kind_name(const DistributionSpec& spec);

// Throws ConfigError when an invariant is violated.
void validate(const DistributionSpec& spec);

bool is_continuous(const DistributionSpec& spec);

/// True when X - c and c - X have the same law.
bool is_symmetric_around(const DistributionSpec& spec, double c);

/// P(X <= x), right-continuous.
double cdf(const DistributionSpec& spec, double x);

/// Fills `out` with i.i.d. draws from `rng`.
void sample_into(const DistributionSpec& spec, Rng& rng, std::span<double> out);

/// n i.i.d. draws from stream 0 of `seed`.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace thspec
