#include "thspec/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "thspec/error.hpp"

namespace thspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPmfSumTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-12;

bool close(double a, double b) {
  return std::abs(a - b) <= kSymmetryTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::string_view kind_name(const DistributionSpec& spec) {
  return std::visit(overloaded{
                        [](const Bernoulli&) { return std::string_view("bernoulli"); },
                        [](const DiscretePmf&) { return std::string_view("discrete"); },
                        [](const Uniform&) { return std::string_view("uniform"); },
                        [](const Gaussian&) { return std::string_view("gaussian"); },
                    },
                    spec);
}

void validate(const DistributionSpec& spec) {
  std::visit(overloaded{
                 [](const Bernoulli& d) {
                   require(d.p >= 0.0 && d.p <= 1.0, "bernoulli: p must lie in [0, 1]");
                 },
                 [](const DiscretePmf& d) {
                   require(!d.values.empty(), "discrete: values must be non-empty");
                   require(d.values.size() == d.probs.size(),
                           "discrete: values and probs must have equal length");
                   for (std::size_t i = 0; i < d.values.size(); ++i) {
                     require(std::isfinite(d.values[i]), "discrete: values must be finite");
                     require(d.probs[i] >= 0.0 && d.probs[i] <= 1.0,
                             "discrete: probabilities must lie in [0, 1]");
                     if (i > 0)
                       require(d.values[i] > d.values[i - 1],
                               "discrete: values must be strictly increasing");
                   }
                   const double total = std::accumulate(d.probs.begin(), d.probs.end(), 0.0);
                   require(std::abs(total - 1.0) <= kPmfSumTolerance,
                           "discrete: probabilities must sum to 1");
                 },
                 [](const Uniform& d) {
                   require(std::isfinite(d.a) && std::isfinite(d.b) && d.a < d.b,
                           "uniform: require finite a < b");
                 },
                 [](const Gaussian& d) {
                   require(std::isfinite(d.mean), "gaussian: mean must be finite");
                   require(std::isfinite(d.stddev) && d.stddev > 0.0,
                           "gaussian: stddev must be positive");
                 },
             },
             spec);
}

bool is_continuous(const DistributionSpec& spec) {
  return std::holds_alternative<Uniform>(spec) || std::holds_alternative<Gaussian>(spec);
}

bool is_symmetric_around(const DistributionSpec& spec, double c) {
  return std::visit(overloaded{
                        [c](const Bernoulli& d) { return close(d.p, 0.5) && close(c, 0.5); },
                        [c](const DiscretePmf& d) {
                          const std::size_t n = d.values.size();
                          for (std::size_t i = 0; i < n; ++i) {
                            const std::size_t j = n - 1 - i;
                            if (!close(d.values[i] + d.values[j], 2.0 * c)) return false;
                            if (!close(d.probs[i], d.probs[j])) return false;
                          }
                          return n > 0;
                        },
                        [c](const Uniform& d) { return close(0.5 * (d.a + d.b), c); },
                        [c](const Gaussian& d) { return close(d.mean, c); },
                    },
                    spec);
}

double cdf(const DistributionSpec& spec, double x) {
  return std::visit(overloaded{
                        [x](const Bernoulli& d) {
                          if (x < 0.0) return 0.0;
                          return x < 1.0 ? 1.0 - d.p : 1.0;
                        },
                        [x](const DiscretePmf& d) {
                          double acc = 0.0;
                          for (std::size_t i = 0; i < d.values.size() && d.values[i] <= x; ++i)
                            acc += d.probs[i];
                          return std::min(acc, 1.0);
                        },
                        [x](const Uniform& d) {
                          return std::clamp((x - d.a) / (d.b - d.a), 0.0, 1.0);
                        },
                        [x](const Gaussian& d) {
                          return 0.5 * std::erfc(-(x - d.mean) / (d.stddev * std::numbers::sqrt2));
                        },
                    },
                    spec);
}

void sample_into(const DistributionSpec& spec, Rng& rng, std::span<double> out) {
  validate(spec);
  std::visit(overloaded{
                 [&](const Bernoulli& d) {
                   for (double& v : out) v = rng.uniform() < d.p ? 1.0 : 0.0;
                 },
                 [&](const DiscretePmf& d) {
                   std::vector<double> cumulative(d.probs.size());
                   std::partial_sum(d.probs.begin(), d.probs.end(), cumulative.begin());
                   cumulative.back() = 1.0;
                   for (double& v : out) {
                     const double u = rng.uniform();
                     const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
                     v = d.values[static_cast<std::size_t>(it - cumulative.begin())];
                   }
                 },
                 [&](const Uniform& d) {
                   for (double& v : out) v = d.a + (d.b - d.a) * rng.uniform();
                 },
                 [&](const Gaussian& d) {
                   for (double& v : out) v = d.mean + d.stddev * rng.normal();
                 },
             },
             spec);
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("sample: n must be positive");
  std::vector<double> out(n);
  Rng rng(seed);
  sample_into(spec, rng, out);
  return out;
}

}  // namespace thspec
