#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thspec/distributions.hpp"
#include "thspec/model.hpp"
#include "thspec/spectrum.hpp"

namespace thspec {

enum class Execution { Serial, Parallel };

struct McConfig {
  DistributionSpec spec = Uniform{-1.0, 1.0};
  double theta = 0.0;
  ModelVariant variant = ModelVariant::Loopless;
  std::size_t n = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Execution execution = Execution::Parallel;

  void validate() const;
};

/// Trivial multiplicities of `trials` independent graphs; trial t draws its
/// hidden values from stream t of cfg.seed, so the result does not depend on
/// the execution mode or thread count.
std::vector<TrivialMultiplicities> sample_coefficients(const McConfig& cfg);

/// Per-trial values of one statistic with their summary.
struct McReport {
  std::string statistic;
  std::vector<double> values;
  double mean = 0.0;
  double variance = 0.0;
  // sqrt(n) * (value - limit), filled when a limit is known.
  std::optional<double> limit;
  std::vector<double> normalized;
  double normalized_variance = 0.0;
  std::optional<double> ks_distance;  // against N(0, 1/4)
};

/// One pass/fail comparison: |observed - expected| <= tolerance, or
/// observed <= expected when `upper_bound_only`.
struct CheckLine {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool upper_bound_only = false;
  bool pass = false;
};

struct ExperimentReport {
  std::string check;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<McReport> statistics;
  std::vector<CheckLine> checks;

  bool pass() const;
};

McReport summarize(std::string statistic, std::vector<double> values,
                   std::optional<double> limit = std::nullopt, std::size_t n = 0);

CheckLine check_close(std::string name, double observed, double expected, double tolerance);
CheckLine check_at_most(std::string name, double observed, double bound);

enum class TrialMode {
  Clt,          // continuous law symmetric around theta/2; limits and KS checked
  Descriptive,  // any law; statistics only
};

/// C_n(-1)/n and C_n(0)/n (loopless) or C~_n(0)/n (self-loops). In Clt mode
/// the means are checked against 1/4 (1/2) within 4 * (1/2) / sqrt(n * trials)
/// and the KS distance of sqrt(n)-normalized values to N(0, 1/4) against
/// 1.95 / sqrt(trials).
ExperimentReport coefficient_trials(const McConfig& cfg, TrialMode mode = TrialMode::Clt);

/// Means of C_n(-1) and C_n(0) - 1/2 against n/4, or C~_n(0) against n/2,
/// within 5 empirical standard errors.
ExperimentReport expectation_check(const McConfig& cfg);

/// Creation-sequence bits under a continuous law symmetric around 0 with
/// theta = 0 against i.i.d. fair coins: per-position frequencies within
/// 4 * 0.5 / sqrt(trials), lag-1 correlations below 4 / sqrt(trials), the
/// loopless tie of positions 0 and 1, and for n <= 6 the frequency of every
/// whole sequence within a 4-sigma multinomial band.
ExperimentReport bernoulli_representation_check(std::size_t n, std::size_t trials,
                                                std::uint64_t seed,
                                                const DistributionSpec& spec = Uniform{-1.0, 1.0},
                                                ModelVariant variant = ModelVariant::Loopless,
                                                Execution execution = Execution::Parallel);

/// Discrete law on {0, 1, 2, ...} with theta = 2m - 1. Checks the block
/// identities on every sampled graph whose classes 0..2m-1 are populated,
/// the mean atom
/// weights at -1 and 0 against 1 - F(m-1) and F(m-1) within 0.02, and with
/// self-loops the off-zero mass against (2(m'-1) + 1) / n, m' the block count.
ExperimentReport discrete_limit_check(const DiscretePmf& pmf, std::size_t m, std::size_t n,
                                      std::size_t trials, std::uint64_t seed,
                                      ModelVariant variant = ModelVariant::Loopless,
                                      Execution execution = Execution::Parallel);

/// Expected blocks for counts[v] = #{X = v}, v < 2m, and counts[2m] = #{X >= 2m}.
/// Loopless with a single X = m vertex: that vertex joins the l_1 run.
BlockDecomposition expected_discrete_blocks(const std::vector<std::size_t>& counts,
                                            std::size_t m, ModelVariant variant);

/// Binary model: sampled and mean spectra against p * delta_{-1} + (1 - p) * delta_0.
ExperimentReport binary_limit_check(double p, std::size_t n, std::size_t trials,
                                    std::uint64_t seed, Execution execution = Execution::Parallel);

}  // namespace thspec
