#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <omp.h>

#include "thspec/asymptotics.hpp"
#include "thspec/binary.hpp"
#include "thspec/error.hpp"
#include "thspec/json_io.hpp"
#include "thspec/oracle.hpp"
#include "thspec/spectrum.hpp"

namespace thspec::cli {

namespace {

constexpr double kVerifyTolerance = 1e-8;
constexpr double kCountTolerance = 1e-7;
constexpr const char* kSeedEnv = "THRESHOLD_SPECTRA_SEED";

struct Options {
  std::string dist;
  std::size_t n = 64;
  std::vector<std::size_t> ns{2, 64, 256, 512};
  double theta = 0.0;
  std::string variant = "loopless";
  std::uint64_t seed = 1;
  std::size_t trials = 400;
  std::vector<double> values;
  std::string out;
  std::string format = "json";
  double bin_width = 0.1;
  std::string config;
  int threads = 0;
  bool per_trial = false;
  bool serial = false;
  std::string check = "clt";
  std::size_t m = 1;
  std::string method = "auto";
  std::size_t graphs = 1;
  std::size_t reps = 5;
  std::size_t dense_cap = kDefaultDenseCap;
  std::size_t max_edges = 1000000;
  bool mean = false;
  bool sample = false;
  bool limit = false;
  bool converge = false;
  double p = 0.5;
  std::size_t k = 1;
  std::size_t l = 1;
};

// Restores the OpenMP thread count when run_cli is used in-process.
class ThreadGuard {
 public:
  ThreadGuard() : saved_(omp_get_max_threads()) {}
  ~ThreadGuard() { omp_set_num_threads(saved_); }
  ThreadGuard(const ThreadGuard&) = delete;
  ThreadGuard& operator=(const ThreadGuard&) = delete;

 private:
  int saved_;
};

struct Command {
  CLI::App* app = nullptr;
  Options opts;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(what + ": invalid JSON: " + e.what());
  }
}

// Inline JSON, a path to a JSON file, or one of the shorthands
// gaussian / uniform / bernoulli (standard parameters).
DistributionSpec load_distribution(const std::string& text, DistributionSpec fallback) {
  if (text.empty()) return fallback;
  if (text == "gaussian") return Gaussian{};
  if (text == "uniform") return Uniform{};
  if (text == "bernoulli") return Bernoulli{};
  if (text.front() == '{') return distribution_from_json(parse_json(text, "--dist"));
  if (std::filesystem::exists(text)) return distribution_from_json(parse_json(read_file(text), text));
  throw ConfigError("--dist: expected JSON, a file path or gaussian|uniform|bernoulli, got '" + text + "'");
}

EigenMethod parse_method(const std::string& text) {
  if (text == "auto") return EigenMethod::Auto;
  if (text == "dense") return EigenMethod::Dense;
  if (text == "bisection") return EigenMethod::Bisection;
  throw ConfigError("--method: expected auto, dense or bisection");
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file || !(file << text)) throw ConfigError("cannot write " + o.out);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw ConfigError("--format: expected one of " + list);
}

// Values from --config fill only options absent from the command line.
void merge_config(CLI::App* app, const std::string& config) {
  if (config.empty()) return;
  const Json j = parse_json(config.front() == '{' ? config : read_file(config), "--config");
  if (!j.is_object()) throw ConfigError("--config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw ConfigError("--config: unknown option '" + key + "'");
    if (opt->count() > 0) continue;
    auto add = [&](const Json& v) {
      if (v.is_string())
        opt->add_result(v.get<std::string>());
      else if (v.is_boolean())
        opt->add_result(v.get<bool>() ? "true" : "false");
      else
        opt->add_result(v.dump());
    };
    if (value.is_array() && key != "dist")
      for (const auto& v : value) add(v);
    else
      add(value);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("--config: option '" + key + "': " + e.what());
    }
  }
}

void resolve_seed(CLI::App* app, Options& o) {
  CLI::Option* opt = app->get_option_no_throw("--seed");
  if (opt == nullptr || opt->count() > 0) return;
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-')
    throw ConfigError(std::string(kSeedEnv) + ": expected a nonnegative integer");
  o.seed = v;
}

ThresholdGraph make_graph(const Options& o, std::uint64_t stream = 0) {
  const ModelVariant variant = parse_variant(o.variant);
  if (!o.values.empty()) return ThresholdGraph(o.values, o.theta, variant);
  return sample_graph(load_distribution(o.dist, Uniform{}), o.n, o.theta, variant, o.seed, stream);
}

Json block_summary(const BlockDecomposition& d) {
  const auto c = trivial_multiplicities(d);
  Json j;
  j["variant"] = std::string(to_string(d.variant));
  j["m"] = d.m();
  j["s1"] = d.s1;
  j["k"] = d.k;
  j["l"] = d.l;
  j["c_minus1"] = c.c_minus1;
  j["c_zero"] = c.c_zero;
  j["J"] = d.n() - c.c_minus1 - c.c_zero;
  return j;
}

std::string spectrum_table(const SpectralDistribution& mu) {
  const bool exact = mu.mode() == SpectralDistribution::Mode::Exact;
  std::string out = fmt::format("{:>24} {:>24}\n", "value", exact ? "multiplicity" : "weight");
  for (const auto& a : mu.atoms())
    out += exact ? fmt::format("{:>24.15g} {:>24}\n", a.value, a.multiplicity)
                 : fmt::format("{:>24.15g} {:>24.15g}\n", a.value, a.weight);
  return out;
}

std::string render_spectrum(const Options& o, const SpectralDistribution& mu, Json extra) {
  if (o.format == "csv") return spectrum_to_csv(mu);
  if (o.format == "hist") return histogram_csv(mu, o.bin_width);
  if (o.format == "table") return spectrum_table(mu);
  Json j = spectrum_to_json(mu);
  for (auto& [key, value] : extra.items()) j[key] = value;
  return dump(j);
}

int cmd_sample(const Options& o, std::ostream& out) {
  require_format(o, {"json", "edges", "table"});
  const ThresholdGraph g = make_graph(o);
  const PeelResult peeled = peel(g);
  if (o.format == "edges") {
    emit(o, edge_list(g, peeled), out);
    return kExitOk;
  }
  if (o.format == "table") {
    const BlockDecomposition d = decompose(peeled.sequence);
    std::string seq;
    for (auto b : peeled.sequence.bits()) seq.push_back(b ? '1' : '0');
    emit(o,
         fmt::format("n {}\ntheta {}\nvariant {}\nsequence {}\nk {}\nl {}\nedges {}\n", g.n(),
                     g.theta(), to_string(g.variant()), seq, fmt::join(d.k, " "),
                     fmt::join(d.l, " "), edge_count(peeled.sequence)),
         out);
    return kExitOk;
  }
  Json j = graph_to_json(g, peeled, o.max_edges);
  if (o.values.empty()) {
    j["distribution"] = distribution_to_json(load_distribution(o.dist, Uniform{}));
    j["seed"] = o.seed;
  }
  emit(o, dump(j), out);
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  require_format(o, {"json", "csv", "hist", "table"});
  const ThresholdGraph g = make_graph(o);
  const BlockDecomposition d = decompose(creation_sequence(g));
  const SpectralDistribution mu = spectral_distribution(d, parse_method(o.method));
  emit(o, render_spectrum(o, mu, block_summary(d)), out);
  return kExitOk;
}

struct VerifyResult {
  std::size_t stream = 0;
  std::size_t n = 0;
  TrivialMultiplicities trivial;
  std::size_t j = 0;
  std::size_t oracle_minus1 = 0;
  std::size_t oracle_zero = 0;
  std::size_t oracle_rank = 0;
  double max_deviation = 0.0;
  bool pass = false;
};

std::size_t count_near(const std::vector<double>& values, double target) {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) {
    return std::abs(v - target) <= kCountTolerance;
  }));
}

VerifyResult verify_one(const ThresholdGraph& g, std::size_t dense_cap, EigenMethod method) {
  if (g.n() > dense_cap)
    throw ConfigError(fmt::format("verify: n = {} exceeds the oracle cap {} (--dense-cap)", g.n(), dense_cap));
  const BlockDecomposition d = decompose(creation_sequence(g));
  const std::vector<double> fast = spectral_distribution(d, method).eigenvalues();
  const DenseSpectrum oracle = dense_spectrum(dense_adjacency(g, dense_cap));

  VerifyResult r;
  r.n = g.n();
  r.trivial = trivial_multiplicities(d);
  r.j = g.n() - r.trivial.c_minus1 - r.trivial.c_zero;
  r.oracle_minus1 = count_near(oracle.eigenvalues, -1.0);
  r.oracle_zero = count_near(oracle.eigenvalues, 0.0);
  r.oracle_rank = oracle.rank;
  for (std::size_t i = 0; i < fast.size(); ++i)
    r.max_deviation = std::max(r.max_deviation, std::abs(fast[i] - oracle.eigenvalues[i]));
  const bool loopless = g.variant() == ModelVariant::Loopless;
  const bool counts = r.oracle_minus1 == count_near(fast, -1.0) && r.oracle_zero == count_near(fast, 0.0) &&
                      r.oracle_zero == r.trivial.c_zero && (!loopless || r.oracle_minus1 == r.trivial.c_minus1);
  r.pass = counts && r.max_deviation <= kVerifyTolerance;
  return r;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "table"});
  if (o.graphs == 0) throw ConfigError("--graphs must be positive");
  const std::size_t graphs = o.values.empty() ? o.graphs : 1;
  const EigenMethod method = parse_method(o.method);
  std::vector<VerifyResult> results;
  for (std::size_t i = 0; i < graphs; ++i) {
    VerifyResult r = verify_one(make_graph(o, i), o.dense_cap, method);
    r.stream = i;
    results.push_back(r);
  }
  const bool pass = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  double worst = 0.0;
  for (const auto& r : results) worst = std::max(worst, r.max_deviation);

  for (const auto& r : results)
    if (!r.pass)
      err << fmt::format(
          "graph {}: c_minus1 {} vs oracle {}, c_zero {} vs oracle {}, max deviation {:.3e}\n", r.stream,
          r.trivial.c_minus1, r.oracle_minus1, r.trivial.c_zero, r.oracle_zero, r.max_deviation);

  if (o.format == "table") {
    std::string text = fmt::format("{:>6} {:>6} {:>9} {:>7} {:>5} {:>12} {:>12} {:>12}  result\n", "graph",
                                   "n", "c_minus1", "c_zero", "J", "oracle(-1)", "oracle(0)", "max_dev");
    for (const auto& r : results)
      text += fmt::format("{:>6} {:>6} {:>9} {:>7} {:>5} {:>12} {:>12} {:>12.3e}  {}\n", r.stream, r.n,
                          r.trivial.c_minus1, r.trivial.c_zero, r.j, r.oracle_minus1, r.oracle_zero,
                          r.max_deviation, r.pass ? "PASS" : "FAIL");
    text += fmt::format("overall: {} (max deviation {:.3e}, tolerance {:g})\n", pass ? "PASS" : "FAIL",
                        worst, kVerifyTolerance);
    emit(o, text, out);
  } else {
    Json j;
    j["schema"] = kSchema;
    j["graphs"] = graphs;
    j["tolerance"] = kVerifyTolerance;
    j["max_deviation"] = worst;
    j["pass"] = pass;
    Json list = Json::array();
    for (const auto& r : results) {
      Json e;
      e["graph"] = r.stream;
      e["n"] = r.n;
      e["c_minus1"] = r.trivial.c_minus1;
      e["c_zero"] = r.trivial.c_zero;
      e["J"] = r.j;
      e["oracle_minus1"] = r.oracle_minus1;
      e["oracle_zero"] = r.oracle_zero;
      e["oracle_rank"] = r.oracle_rank;
      e["max_deviation"] = r.max_deviation;
      e["pass"] = r.pass;
      list.push_back(std::move(e));
    }
    j["results"] = std::move(list);
    emit(o, dump(j), out);
  }
  return pass ? kExitOk : kExitFail;
}

template <class F>
double median_seconds(std::size_t reps, F&& f) {
  std::vector<double> times;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t h = times.size() / 2;
  return times.size() % 2 ? times[h] : 0.5 * (times[h - 1] + times[h]);
}

int cmd_bench(const Options& o, std::ostream& out) {
  if (o.reps < 5) throw ConfigError("--reps must be at least 5");
  if (o.ns.empty()) throw ConfigError("--n: at least one size is required");
  const DistributionSpec spec = load_distribution(o.dist, Uniform{});
  const ModelVariant variant = parse_variant(o.variant);
  const EigenMethod method = parse_method(o.method);
  std::string text = "n,m,J,quotient_time,dense_time,speedup,agree\n";
  for (std::size_t i = 0; i < o.ns.size(); ++i) {
    const ThresholdGraph g = sample_graph(spec, o.ns[i], o.theta, variant, o.seed, i);
    std::vector<double> fast;
    BlockDecomposition d;
    const double tq = median_seconds(o.reps, [&] {
      d = decompose(creation_sequence(g));
      fast = spectral_distribution(d, method).eigenvalues();
    });
    const auto c = trivial_multiplicities(d);
    const std::size_t j = g.n() - c.c_minus1 - c.c_zero;
    std::string dense_time = "skipped", speedup = "", agree = "";
    if (g.n() <= o.dense_cap) {
      DenseSpectrum oracle;
      const double td = median_seconds(o.reps, [&] { oracle = dense_spectrum(dense_adjacency(g, o.dense_cap)); });
      double dev = 0.0;
      for (std::size_t e = 0; e < fast.size(); ++e) dev = std::max(dev, std::abs(fast[e] - oracle.eigenvalues[e]));
      dense_time = fmt::format("{:.6e}", td);
      speedup = fmt::format("{:.2f}", td / tq);
      agree = dev <= kVerifyTolerance ? "yes" : "no";
    }
    text += fmt::format("{},{},{},{:.6e},{},{},{}\n", g.n(), d.m(), j, tq, dense_time, speedup, agree);
  }
  emit(o, text, out);
  return kExitOk;
}

int cmd_limits(const Options& o, std::ostream& out) {
  require_format(o, {"json", "table"});
  const ModelVariant variant = parse_variant(o.variant);
  const Execution execution = o.serial ? Execution::Serial : Execution::Parallel;
  ExperimentReport report;
  Json config;
  if (o.check == "discrete") {
    if (o.m == 0) throw ConfigError("--m must be positive");
    DiscretePmf fallback;
    for (std::size_t v = 0; v < 2 * o.m; ++v) {
      fallback.values.push_back(static_cast<double>(v));
      fallback.probs.push_back(1.0 / static_cast<double>(2 * o.m));
    }
    const DistributionSpec spec = load_distribution(o.dist, fallback);
    const auto* pmf = std::get_if<DiscretePmf>(&spec);
    if (pmf == nullptr) throw ConfigError("limits --check discrete needs a discrete distribution");
    report = discrete_limit_check(*pmf, o.m, o.n, o.trials, o.seed, variant, execution);
    config["distribution"] = distribution_to_json(spec);
    config["m"] = o.m;
    config["theta"] = static_cast<double>(2 * o.m - 1);
  } else {
    const DistributionSpec spec = load_distribution(o.dist, Uniform{});
    config["distribution"] = distribution_to_json(spec);
    if (o.check == "bernoulli") {
      report = bernoulli_representation_check(o.n, o.trials, o.seed, spec, variant, execution);
      config["theta"] = 0.0;
    } else {
      const McConfig cfg{spec, o.theta, variant, o.n, o.trials, o.seed, execution};
      config["theta"] = o.theta;
      if (o.check == "clt")
        report = coefficient_trials(cfg, TrialMode::Clt);
      else if (o.check == "coefficients")
        report = coefficient_trials(cfg, TrialMode::Descriptive);
      else if (o.check == "expectation")
        report = expectation_check(cfg);
      else
        throw ConfigError("--check: expected clt, coefficients, expectation, bernoulli or discrete");
    }
  }
  config["variant"] = std::string(to_string(variant));

  if (o.format == "table") {
    emit(o, report_table(report), out);
  } else {
    Json j = report_to_json(report, o.per_trial);
    j["config"] = std::move(config);
    emit(o, dump(j), out);
  }
  return report.pass() ? kExitOk : kExitFail;
}

int cmd_binary(const Options& o, std::ostream& out) {
  const int modes = int(o.mean) + int(o.sample) + int(o.limit) + int(o.converge);
  if (modes > 1) throw ConfigError("binary: choose one of --mean, --sample, --limit, --converge");
  if (o.converge) {
    require_format(o, {"json", "table"});
    const ExperimentReport report = binary_limit_check(o.p, o.n, o.trials, o.seed,
                                                       o.serial ? Execution::Serial : Execution::Parallel);
    if (o.format == "table") {
      emit(o, report_table(report), out);
    } else {
      Json j = report_to_json(report, o.per_trial);
      j["p"] = o.p;
      emit(o, dump(j), out);
    }
    return report.pass() ? kExitOk : kExitFail;
  }
  require_format(o, {"json", "csv", "hist", "table"});
  Json extra;
  if (o.sample) {
    const LambdaPair lam = lambda_pm(o.k, o.l);
    extra["k"] = o.k;
    extra["l"] = o.l;
    extra["lambda_minus"] = lam.minus;
    extra["lambda_plus"] = lam.plus;
    emit(o, render_spectrum(o, binary_sample_spectrum(o.k, o.l), extra), out);
  } else if (o.limit) {
    extra["p"] = o.p;
    emit(o, render_spectrum(o, binary_limit(o.p), extra), out);
  } else {
    extra["p"] = o.p;
    emit(o, render_spectrum(o, binary_mean_spectrum({o.n, o.p, o.theta}), extra), out);
  }
  return kExitOk;
}

void add_graph_options(CLI::App* app, Options& o, bool with_values) {
  app->add_option("--dist", o.dist, "Law of X: JSON object, JSON file, or gaussian|uniform|bernoulli");
  app->add_option("--n", o.n, "Number of vertices")->check(CLI::PositiveNumber);
  app->add_option("--theta", o.theta, "Threshold");
  app->add_option("--variant", o.variant, "loopless or self-loops");
  app->add_option("--seed", o.seed, std::string("Seed (fallback: $") + kSeedEnv + ", then 1)");
  if (with_values)
    app->add_option("--values", o.values, "Hidden values, bypasses sampling")->delimiter(',');
}

void add_io_options(CLI::App* app, Options& o, const std::string& formats) {
  app->add_option("--out", o.out, "Output path (default stdout)");
  app->add_option("--format", o.format, "Output format: " + formats);
  app->add_option("--config", o.config, "JSON config (file or inline); explicit flags take precedence");
  app->add_option("--threads", o.threads, "OpenMP threads")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra of threshold network models", "thspec"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Command sample, spectrum, verify, bench, limits, binary;

  sample.app = app.add_subcommand("sample", "Sample a threshold graph");
  add_graph_options(sample.app, sample.opts, true);
  add_io_options(sample.app, sample.opts, "json|edges|table");
  sample.app->add_option("--max-edges", sample.opts.max_edges, "Omit the edge list above this count");

  spectrum.app = app.add_subcommand("spectrum", "Exact spectrum by the quotient reduction");
  add_graph_options(spectrum.app, spectrum.opts, true);
  add_io_options(spectrum.app, spectrum.opts, "json|csv|hist|table");
  spectrum.app->add_option("--method", spectrum.opts.method, "auto|dense|bisection");
  spectrum.app->add_option("--bin-width", spectrum.opts.bin_width, "Histogram bin width");

  verify.app = app.add_subcommand("verify", "Compare the quotient path with a dense eigensolver");
  add_graph_options(verify.app, verify.opts, true);
  add_io_options(verify.app, verify.opts, "json|table");
  verify.app->add_option("--graphs", verify.opts.graphs, "Number of sampled graphs (stream i for graph i)");
  verify.app->add_option("--dense-cap", verify.opts.dense_cap, "Largest n for the dense oracle");
  verify.app->add_option("--method", verify.opts.method, "auto|dense|bisection");

  bench.app = app.add_subcommand("bench", "Time the quotient path against the dense oracle");
  bench.app->add_option("--dist", bench.opts.dist, "Law of X");
  bench.app->add_option("--n", bench.opts.ns, "Sizes, comma separated")->delimiter(',');
  bench.app->add_option("--theta", bench.opts.theta, "Threshold");
  bench.app->add_option("--variant", bench.opts.variant, "loopless or self-loops");
  bench.app->add_option("--seed", bench.opts.seed, "Seed");
  bench.app->add_option("--reps", bench.opts.reps, "Repetitions per size (median reported, >= 5)");
  bench.app->add_option("--dense-cap", bench.opts.dense_cap, "Skip the dense path above this n");
  bench.app->add_option("--method", bench.opts.method, "auto|dense|bisection");
  add_io_options(bench.app, bench.opts, "csv");
  bench.opts.format = "csv";

  limits.app = app.add_subcommand("limits", "Monte Carlo checks of the limit theorems");
  limits.opts.n = 10000;
  add_graph_options(limits.app, limits.opts, false);
  add_io_options(limits.app, limits.opts, "json|table");
  limits.app->add_option("--check", limits.opts.check, "clt|coefficients|expectation|bernoulli|discrete");
  limits.app->add_option("--trials", limits.opts.trials, "Independent graphs")->check(CLI::PositiveNumber);
  limits.app->add_option("--m", limits.opts.m, "Discrete check: theta = 2m - 1");
  limits.app->add_flag("--per-trial", limits.opts.per_trial, "Include per-trial values");
  limits.app->add_flag("--serial", limits.opts.serial, "Run trials on one thread");

  binary.app = app.add_subcommand("binary", "Binary threshold model");
  binary.opts.n = 2;
  binary.app->add_option("--n", binary.opts.n, "Number of vertices");
  binary.app->add_option("--p", binary.opts.p, "P(X = 1)");
  binary.app->add_option("--theta", binary.opts.theta, "Threshold in [0, 1)");
  binary.app->add_option("--k", binary.opts.k, "Vertices with X = 1 (--sample)");
  binary.app->add_option("--l", binary.opts.l, "Vertices with X = 0 (--sample)");
  binary.app->add_option("--seed", binary.opts.seed, "Seed (--converge)");
  binary.app->add_option("--trials", binary.opts.trials, "Graphs (--converge)");
  binary.app->add_option("--bin-width", binary.opts.bin_width, "Histogram bin width");
  binary.app->add_flag("--mean", binary.opts.mean, "Mean spectral distribution (default)");
  binary.app->add_flag("--sample", binary.opts.sample, "Spectrum of the graph with k ones and l zeros");
  binary.app->add_flag("--limit", binary.opts.limit, "Limit p delta(-1) + (1-p) delta(0)");
  binary.app->add_flag("--converge", binary.opts.converge, "Monte Carlo convergence to the limit");
  binary.app->add_flag("--per-trial", binary.opts.per_trial, "Include per-trial values (--converge)");
  binary.app->add_flag("--serial", binary.opts.serial, "Run trials on one thread");
  add_io_options(binary.app, binary.opts, "json|csv|hist|table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Command* active = nullptr;
  for (Command* c : {&sample, &spectrum, &verify, &bench, &limits, &binary})
    if (c->app->parsed()) active = c;

  const ThreadGuard guard;
  try {
    Options& o = active->opts;
    merge_config(active->app, o.config);
    resolve_seed(active->app, o);
    const bool parallel_by_default = active == &limits || active == &bench || active == &binary;
    if (o.threads > 0)
      omp_set_num_threads(o.threads);
    else if (!parallel_by_default)
      omp_set_num_threads(1);

    if (active == &sample) return cmd_sample(o, out);
    if (active == &spectrum) return cmd_spectrum(o, out);
    if (active == &verify) return cmd_verify(o, out, err);
    if (active == &bench) return cmd_bench(o, out);
    if (active == &limits) return cmd_limits(o, out);
    return cmd_binary(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitFail;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace thspec::cli
