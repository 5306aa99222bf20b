// Serial reference kernels against their OpenMP counterparts, and the
// quotient path against the dense oracle. Exits 1 if any pair disagrees.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <omp.h>

#include "thspec/asymptotics.hpp"
#include "thspec/bisection.hpp"
#include "thspec/oracle.hpp"
#include "thspec/spectrum.hpp"

using namespace thspec;

namespace {

template <class F>
double median_seconds(int reps, F&& f) {
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool report(const std::string& name, double reference, double fast, bool agree) {
  fmt::print("{:<44} {:>12.4e} {:>12.4e} {:>9.2f}x  {}\n", name, reference, fast, reference / fast,
             agree ? "agree" : "DISAGREE");
  return agree;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int reps = quick ? 3 : 5;
  const std::size_t n_bisect = quick ? 1000 : 6000;
  const std::size_t n_dense = quick ? 256 : 2048;
  const std::size_t n_mc = quick ? 2000 : 10000;
  const std::size_t trials = quick ? 16 : 200;
  bool ok = true;

  fmt::print("threads {}\n", omp_get_max_threads());
  fmt::print("{:<44} {:>12} {:>12} {:>10}\n", "kernel (reference vs fast)", "reference s", "fast s",
             "speedup");

  {
    const ThresholdGraph g = sample_graph(Uniform{}, n_bisect, 0.0, ModelVariant::Loopless, 7);
    const QuotientMatrix q = build_quotient(decompose(creation_sequence(g)));
    const StaircaseProfile profile = staircase_profile(q);
    std::vector<double> serial, parallel;
    const double ts = median_seconds(reps, [&] { serial = bisect_eigenvalues_serial(profile); });
    const double tp = median_seconds(reps, [&] { parallel = bisect_eigenvalues(profile); });
    const double scale = std::max(1.0, std::abs(serial.back()));
    ok &= report(fmt::format("bisection serial vs OpenMP (J={})", q.dim()), ts, tp,
                 max_abs_diff(serial, parallel) <= 1e-12 * scale);
  }
  {
    const ThresholdGraph g = sample_graph(Uniform{}, quick ? 400 : 1200, 0.0, ModelVariant::Loopless, 8);
    const QuotientMatrix q = build_quotient(decompose(creation_sequence(g)));
    std::vector<double> dense, bisect;
    const double td = median_seconds(reps, [&] { dense = quotient_eigenvalues(q, EigenMethod::Dense); });
    const double tb = median_seconds(reps, [&] { bisect = quotient_eigenvalues(q, EigenMethod::Bisection); });
    ok &= report(fmt::format("quotient dense vs bisection (J={})", q.dim()), td, tb,
                 max_abs_diff(dense, bisect) <= 1e-9 * std::max(1.0, std::abs(dense.back())));
  }
  {
    const ThresholdGraph g = sample_graph(Uniform{}, n_dense, 0.0, ModelVariant::Loopless, 9);
    std::vector<double> oracle, fast;
    const double td = median_seconds(quick ? 1 : 3, [&] {
      oracle = dense_spectrum(dense_adjacency(g)).eigenvalues;
    });
    const double tq = median_seconds(reps, [&] {
      fast = spectral_distribution(decompose(creation_sequence(g))).eigenvalues();
    });
    ok &= report(fmt::format("dense oracle vs quotient path (n={})", n_dense), td, tq,
                 max_abs_diff(oracle, fast) <= 1e-8);
  }
  {
    McConfig cfg{Uniform{}, 0.0, ModelVariant::Loopless, n_mc, trials, 11, Execution::Serial};
    std::vector<TrivialMultiplicities> serial, parallel;
    const double ts = median_seconds(reps, [&] { serial = sample_coefficients(cfg); });
    cfg.execution = Execution::Parallel;
    const double tp = median_seconds(reps, [&] { parallel = sample_coefficients(cfg); });
    const bool same = std::equal(serial.begin(), serial.end(), parallel.begin(), parallel.end(),
                                 [](const auto& a, const auto& b) {
                                   return a.c_minus1 == b.c_minus1 && a.c_zero == b.c_zero;
                                 });
    ok &= report(fmt::format("monte carlo serial vs OpenMP ({}x n={})", trials, n_mc), ts, tp, same);
  }
  return ok ? 0 : 1;
}
