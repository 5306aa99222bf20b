#include "thspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>

#include "thspec/binary.hpp"
#include "thspec/error.hpp"
#include "thspec/stats.hpp"

namespace thspec {

namespace {

// Runs body(t) for every trial. Trials are independent, so the parallel
// schedule cannot change any result.
template <class Body>
void for_each_trial(std::size_t trials, Execution execution, Body&& body) {
  if (execution == Execution::Serial) {
    for (std::size_t t = 0; t < trials; ++t) body(t);
    return;
  }
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    try {
      body(static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(thspec_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

double ks_threshold(std::size_t trials) { return 1.95 / std::sqrt(static_cast<double>(trials)); }

std::size_t non_trivial_count(const TrivialMultiplicities& c, std::size_t n) {
  return n - c.c_minus1 - c.c_zero;
}

}  // namespace

void McConfig::validate() const {
  thspec::validate(spec);
  require(n >= 2, "monte carlo: n must be at least 2");
  require(trials >= 1, "monte carlo: trials must be positive");
  require(std::isfinite(theta), "monte carlo: theta must be finite");
}

bool ExperimentReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

std::vector<TrivialMultiplicities> sample_coefficients(const McConfig& cfg) {
  cfg.validate();
  std::vector<TrivialMultiplicities> out(cfg.trials);
  for_each_trial(cfg.trials, cfg.execution, [&](std::size_t t) {
    const ThresholdGraph g = sample_graph(cfg.spec, cfg.n, cfg.theta, cfg.variant, cfg.seed, t);
    out[t] = trivial_multiplicities(decompose(creation_sequence(g)));
  });
  return out;
}

McReport summarize(std::string statistic, std::vector<double> values, std::optional<double> limit,
                   std::size_t n) {
  McReport r;
  r.statistic = std::move(statistic);
  r.values = std::move(values);
  r.mean = stats::mean(r.values);
  r.variance = stats::sample_variance(r.values);
  r.limit = limit;
  if (limit) {
    const double scale = std::sqrt(static_cast<double>(n));
    r.normalized.reserve(r.values.size());
    for (double v : r.values) r.normalized.push_back(scale * (v - *limit));
    r.normalized_variance = stats::sample_variance(r.normalized);
  }
  return r;
}

CheckLine check_close(std::string name, double observed, double expected, double tolerance) {
  return {std::move(name), observed, expected, tolerance, false,
          std::abs(observed - expected) <= tolerance};
}

CheckLine check_at_most(std::string name, double observed, double bound) {
  return {std::move(name), observed, bound, 0.0, true, observed <= bound};
}

ExperimentReport coefficient_trials(const McConfig& cfg, TrialMode mode) {
  cfg.validate();
  const bool clt = mode == TrialMode::Clt;
  if (clt && !(is_continuous(cfg.spec) && is_symmetric_around(cfg.spec, 0.5 * cfg.theta)))
    throw ConfigError("clt: the law of X must be continuous and symmetric around theta/2");

  const auto coeffs = sample_coefficients(cfg);
  const double nd = static_cast<double>(cfg.n);
  auto ratio = [&](auto member) {
    std::vector<double> v;
    v.reserve(coeffs.size());
    for (const auto& c : coeffs) v.push_back(static_cast<double>(c.*member) / nd);
    return v;
  };

  struct Stat {
    std::string name;
    std::vector<double> values;
    double limit;
  };
  std::vector<Stat> wanted;
  if (cfg.variant == ModelVariant::Loopless) {
    wanted.push_back({"C_n(-1)/n", ratio(&TrivialMultiplicities::c_minus1), 0.25});
    wanted.push_back({"C_n(0)/n", ratio(&TrivialMultiplicities::c_zero), 0.25});
  } else {
    wanted.push_back({"C~_n(0)/n", ratio(&TrivialMultiplicities::c_zero), 0.5});
  }

  ExperimentReport report{clt ? "clt" : "coefficients", cfg.n, cfg.trials, cfg.seed, {}, {}};
  const double mean_band = 4.0 * 0.5 / std::sqrt(nd * static_cast<double>(cfg.trials));
  for (auto& s : wanted) {
    McReport r = summarize(s.name, std::move(s.values),
                           clt ? std::optional<double>(s.limit) : std::nullopt, cfg.n);
    if (clt) {
      r.ks_distance = stats::ks_distance(
          r.normalized, [](double x) { return stats::normal_cdf(x, 0.0, 0.25); });
      report.checks.push_back(check_close("mean " + s.name, r.mean, s.limit, mean_band));
      report.checks.push_back(
          check_at_most("KS sqrt(n)-normalized " + s.name, *r.ks_distance, ks_threshold(cfg.trials)));
    }
    report.statistics.push_back(std::move(r));
  }
  return report;
}

ExperimentReport expectation_check(const McConfig& cfg) {
  cfg.validate();
  if (!(is_continuous(cfg.spec) && is_symmetric_around(cfg.spec, 0.5 * cfg.theta)))
    throw ConfigError("expectation: the law of X must be continuous and symmetric around theta/2");

  const auto coeffs = sample_coefficients(cfg);
  const double nd = static_cast<double>(cfg.n);
  const double root_trials = std::sqrt(static_cast<double>(cfg.trials));
  ExperimentReport report{"expectation", cfg.n, cfg.trials, cfg.seed, {}, {}};

  auto add = [&](std::string name, std::vector<double> values, double expected) {
    McReport r = summarize(name, std::move(values));
    const double band = 5.0 * std::sqrt(r.variance) / root_trials;
    report.checks.push_back(check_close("E[" + name + "]", r.mean, expected, band));
    report.statistics.push_back(std::move(r));
  };

  std::vector<double> a, b;
  for (const auto& c : coeffs) {
    a.push_back(static_cast<double>(c.c_minus1));
    b.push_back(static_cast<double>(c.c_zero));
  }
  if (cfg.variant == ModelVariant::Loopless) {
    for (double& v : b) v -= 0.5;
    add("C_n(-1)", std::move(a), nd / 4.0);
    add("C_n(0)-1/2", std::move(b), nd / 4.0);
  } else {
    add("C~_n(0)", std::move(b), nd / 2.0);
  }
  return report;
}

ExperimentReport bernoulli_representation_check(std::size_t n, std::size_t trials,
                                                std::uint64_t seed, const DistributionSpec& spec,
                                                ModelVariant variant, Execution execution) {
  validate(spec);
  require(n >= 2, "bernoulli representation: n must be at least 2");
  require(trials >= 1, "bernoulli representation: trials must be positive");
  require(is_continuous(spec) && is_symmetric_around(spec, 0.0),
          "bernoulli representation: the law of X must be continuous and symmetric around 0");
  if (n * trials > (std::size_t{1} << 28))
    throw ResourceError("bernoulli representation: n * trials exceeds 2^28 stored bits");

  std::vector<std::uint8_t> bits(n * trials);
  for_each_trial(trials, execution, [&](std::size_t t) {
    const auto s = creation_sequence(sample_graph(spec, n, 0.0, variant, seed, t));
    std::copy(s.bits().begin(), s.bits().end(), bits.begin() + static_cast<std::ptrdiff_t>(t * n));
  });
  auto bit = [&](std::size_t t, std::size_t i) { return bits[t * n + i]; };

  ExperimentReport report{"bernoulli", n, trials, seed, {}, {}};
  const double td = static_cast<double>(trials);

  std::vector<double> ones_fraction(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += bit(t, i);
    ones_fraction[t] = static_cast<double>(ones) / static_cast<double>(n);
  }
  report.statistics.push_back(summarize("ones per sequence / n", std::move(ones_fraction)));

  std::vector<std::size_t> ones(n, 0);
  for (std::size_t t = 0; t < trials; ++t)
    for (std::size_t i = 0; i < n; ++i) ones[i] += bit(t, i);

  const double freq_band = 4.0 * 0.5 / std::sqrt(td);
  for (std::size_t i = 0; i < n; ++i)
    report.checks.push_back(check_close(fmt::format("frequency of ones at position {}", i),
                                        static_cast<double>(ones[i]) / td, 0.5, freq_band));

  const std::size_t first_free = variant == ModelVariant::Loopless ? 1 : 0;
  const double corr_band = 4.0 / std::sqrt(td);
  for (std::size_t i = first_free; i + 1 < n; ++i) {
    std::size_t both = 0;
    for (std::size_t t = 0; t < trials; ++t) both += bit(t, i) & bit(t, i + 1);
    const double fa = static_cast<double>(ones[i]) / td;
    const double fb = static_cast<double>(ones[i + 1]) / td;
    const double var = fa * (1.0 - fa) * fb * (1.0 - fb);
    const double rho = var > 0.0 ? (static_cast<double>(both) / td - fa * fb) / std::sqrt(var) : 1.0;
    report.checks.push_back(
        check_close(fmt::format("lag-1 correlation positions {},{}", i, i + 1), rho, 0.0, corr_band));
  }

  if (variant == ModelVariant::Loopless) {
    std::size_t differ = 0;
    for (std::size_t t = 0; t < trials; ++t) differ += bit(t, 0) != bit(t, 1);
    report.checks.push_back(check_close("trials with position 0 != position 1",
                                        static_cast<double>(differ), 0.0, 0.0));
  }

  if (n <= 6) {
    const std::size_t free_bits = n - first_free;
    const std::size_t patterns = std::size_t{1} << free_bits;
    std::vector<std::size_t> seen(patterns, 0);
    for (std::size_t t = 0; t < trials; ++t) {
      std::size_t code = 0;
      for (std::size_t i = first_free; i < n; ++i) code |= std::size_t{bit(t, i)} << (i - first_free);
      ++seen[code];
    }
    const double q = 1.0 / static_cast<double>(patterns);
    const double band = 4.0 * std::sqrt(q * (1.0 - q) / td);
    for (std::size_t code = 0; code < patterns; ++code) {
      std::string word;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = std::max(i, first_free) - first_free;
        word.push_back((code >> j) & 1 ? '1' : '0');
      }
      report.checks.push_back(check_close("frequency of sequence " + word,
                                          static_cast<double>(seen[code]) / td, q, band));
    }
  }
  return report;
}

BlockDecomposition expected_discrete_blocks(const std::vector<std::size_t>& counts, std::size_t m,
                                            ModelVariant variant) {
  require(m >= 1 && counts.size() == 2 * m + 1, "expected blocks: counts must have 2m + 1 entries");
  std::vector<std::size_t> k, l;
  for (std::size_t i = 1; i <= m; ++i) {
    k.push_back(counts[m - 1 + i]);
    l.push_back(counts[m - i]);
  }
  if (counts[2 * m] > 0) {
    k.push_back(counts[2 * m]);
    l.push_back(0);
  }
  if (variant == ModelVariant::Loopless && k[0] == 1) {
    k[0] = 0;
    l[0] += 1;
  }
  return BlockDecomposition::from_blocks(std::move(k), std::move(l), variant);
}

ExperimentReport discrete_limit_check(const DiscretePmf& pmf, std::size_t m, std::size_t n,
                                      std::size_t trials, std::uint64_t seed, ModelVariant variant,
                                      Execution execution) {
  const DistributionSpec spec = pmf;
  validate(spec);
  require(m >= 1, "discrete limit: m must be positive");
  require(n >= 2, "discrete limit: n must be at least 2");
  require(trials >= 1, "discrete limit: trials must be positive");
  for (double v : pmf.values)
    require(v >= 0.0 && v == std::floor(v), "discrete limit: values must be nonnegative integers");
  for (std::size_t v = 0; v < 2 * m; ++v) {
    const auto it = std::find(pmf.values.begin(), pmf.values.end(), static_cast<double>(v));
    require(it != pmf.values.end() && pmf.probs[static_cast<std::size_t>(it - pmf.values.begin())] > 0.0,
            "discrete limit: every value 0..2m-1 needs positive probability");
  }

  const double theta = static_cast<double>(2 * m - 1);
  struct Trial {
    bool checked = false;
    bool match = false;
    double w_minus1 = 0.0;
    double w_zero = 0.0;
    double off = 0.0;
    double off_ratio = 0.0;
  };
  std::vector<Trial> out(trials);
  const double nd = static_cast<double>(n);

  for_each_trial(trials, execution, [&](std::size_t t) {
    const ThresholdGraph g = sample_graph(spec, n, theta, variant, seed, t);
    std::vector<std::size_t> counts(2 * m + 1, 0);
    for (double x : g.values()) ++counts[std::min(static_cast<std::size_t>(x), 2 * m)];
    const BlockDecomposition d = decompose(creation_sequence(g));
    Trial& r = out[t];
    r.checked = std::all_of(counts.begin(), counts.end() - 1, [](std::size_t c) { return c > 0; });
    if (r.checked) r.match = d == expected_discrete_blocks(counts, m, variant);
    const auto c = trivial_multiplicities(d);
    r.w_minus1 = static_cast<double>(c.c_minus1) / nd;
    r.w_zero = static_cast<double>(c.c_zero) / nd;
    const double j = static_cast<double>(non_trivial_count(c, n));
    r.off = j / nd;
    r.off_ratio = j / static_cast<double>(2 * (d.m() - 1) + 1);
  });

  ExperimentReport report{"discrete", n, trials, seed, {}, {}};
  std::size_t checked = 0, mismatched = 0;
  std::vector<double> wm, wz, off;
  double worst_ratio = 0.0;
  for (const auto& r : out) {
    checked += r.checked;
    mismatched += r.checked && !r.match;
    wm.push_back(r.w_minus1);
    wz.push_back(r.w_zero);
    off.push_back(r.off);
    worst_ratio = std::max(worst_ratio, r.off_ratio);
  }
  report.checks.push_back(check_close(
      fmt::format("block identity mismatches ({} of {} graphs had all classes populated)", checked,
                  trials),
      static_cast<double>(mismatched), 0.0, 0.0));

  const double f = cdf(spec, static_cast<double>(m) - 1.0);
  if (variant == ModelVariant::Loopless) {
    report.statistics.push_back(summarize("weight(-1)", std::move(wm), 1.0 - f, n));
    report.statistics.push_back(summarize("weight(0)", std::move(wz), f, n));
    report.statistics.push_back(summarize("mass off {-1,0}", std::move(off)));
    report.checks.push_back(check_close("mean weight(-1) vs 1-F(m-1)",
                                        report.statistics[0].mean, 1.0 - f, 0.02));
    report.checks.push_back(
        check_close("mean weight(0) vs F(m-1)", report.statistics[1].mean, f, 0.02));
  } else {
    report.statistics.push_back(summarize("weight(0)", std::move(wz), 1.0, n));
    report.statistics.push_back(summarize("mass off 0", std::move(off)));
    report.checks.push_back(check_close("mean weight(0) vs 1", report.statistics[0].mean, 1.0, 0.02));
    report.checks.push_back(
        check_at_most("max off-zero mass * n / (2(m'-1)+1)", worst_ratio, 1.0));
  }
  return report;
}

ExperimentReport binary_limit_check(double p, std::size_t n, std::size_t trials, std::uint64_t seed,
                                    Execution execution) {
  BinaryModelParams params{n, p, 0.0};
  params.validate();
  require(trials >= 1, "binary limit: trials must be positive");
  const DistributionSpec spec = Bernoulli{p};

  std::vector<double> wm(trials), wz(trials);
  for_each_trial(trials, execution, [&](std::size_t t) {
    const ThresholdGraph g = sample_graph(spec, n, params.theta, ModelVariant::Loopless, seed, t);
    const SpectralDistribution mu = spectral_distribution(decompose(creation_sequence(g)));
    wm[t] = mu.weight_at(-1.0);
    wz[t] = mu.weight_at(0.0);
  });

  const double nd = static_cast<double>(n);
  const double band = 4.0 * std::sqrt(p * (1.0 - p) / (nd * static_cast<double>(trials))) + 1.0 / nd;
  ExperimentReport report{"binary-limit", n, trials, seed, {}, {}};
  report.statistics.push_back(summarize("sample weight(-1)", std::move(wm), p, n));
  report.statistics.push_back(summarize("sample weight(0)", std::move(wz), 1.0 - p, n));
  report.checks.push_back(check_close("mean sample weight(-1) vs p", report.statistics[0].mean, p, band));
  report.checks.push_back(
      check_close("mean sample weight(0) vs 1-p", report.statistics[1].mean, 1.0 - p, band));

  const SpectralDistribution mean = binary_mean_spectrum(params);
  report.checks.push_back(check_close("mean spectrum weight(-1) vs p", mean.weight_at(-1.0), p, 1.0 / nd));
  report.checks.push_back(
      check_close("mean spectrum weight(0) vs 1-p", mean.weight_at(0.0), 1.0 - p, 1.0 / nd));
  return report;
}

}  // namespace thspec
