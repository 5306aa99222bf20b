#include "thspec/bisection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "thspec/spectrum.hpp"

namespace thspec {

namespace {

// Replaces pivots that vanish to working precision; keeps sigma^2 finite.
constexpr double kPivotFloor = 1e-140;
constexpr int kMaxIterations = 128;
constexpr int kLanes = 8;

bool converged(double lo, double hi) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return hi - lo <= 4.0 * eps * std::max(std::abs(lo), std::abs(hi)) ||
         hi - lo <= std::numeric_limits<double>::min();
}

// The trivial eigenvalues (0, and -1 without loops) are never quotient
// eigenvalues, but an exact midpoint there can produce an exactly zero pivot
// whose sign the recurrence cannot resolve. Step to the 3/4 point instead.
double midpoint(const StaircaseProfile& p, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  if (mid == 0.0 || (p.loopless && mid == -1.0)) return 0.5 * (mid + hi);
  return mid;
}

}  // namespace

StaircaseProfile staircase_profile(const QuotientMatrix& q) {
  StaircaseProfile p;
  const double loop_shift = q.variant() == ModelVariant::Loopless ? 1.0 : 0.0;
  double total = 0.0;
  for (const auto& block : q.blocks()) {
    const double d = static_cast<double>(block.size);
    const double tau = block.clique ? 1.0 : 0.0;
    p.clique.push_back(tau);
    p.shift.push_back(loop_shift * tau / d);
    p.inv_size.push_back(1.0 / d);
    total += d;
  }
  p.bound = total + 1.0;
  p.loopless = loop_shift != 0.0;
  return p;
}

std::size_t count_below(const StaircaseProfile& profile, double x) {
  std::size_t negatives = 0;
  double sigma = 0.0;
  for (std::size_t r = 0; r < profile.dim(); ++r) {
    const double tau = profile.clique[r];
    const double off = tau + sigma;
    const double a = profile.shift[r] + x * profile.inv_size[r];
    double pivot = off - a;
    if (std::abs(pivot) < kPivotFloor) pivot = -kPivotFloor;
    negatives += pivot < 0.0 ? 1 : 0;
    // sigma - off^2 / pivot, rearranged so a tiny pivot does not cancel.
    sigma = -tau - a * (off / pivot);
  }
  return negatives;
}

std::vector<double> bisect_eigenvalues_serial(const StaircaseProfile& profile) {
  const std::size_t dim = profile.dim();
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double lo = -profile.bound;
    double hi = profile.bound;
    for (int it = 0; it < kMaxIterations && !converged(lo, hi); ++it) {
      const double mid = midpoint(profile, lo, hi);
      if (count_below(profile, mid) <= j)
        lo = mid;
      else
        hi = mid;
    }
    out[j] = 0.5 * (lo + hi);
  }
  return out;
}

std::vector<double> bisect_eigenvalues(const StaircaseProfile& profile) {
  const std::size_t dim = profile.dim();
  std::vector<double> out(dim);
  if (dim == 0) return out;
  const auto batches = static_cast<long>((dim + kLanes - 1) / kLanes);
  const double* clique = profile.clique.data();
  const double* shift = profile.shift.data();
  const double* inv_size = profile.inv_size.data();

#pragma omp parallel for schedule(dynamic, 1)
  for (long batch = 0; batch < batches; ++batch) {
    const std::size_t first = static_cast<std::size_t>(batch) * kLanes;
    alignas(64) std::array<double, kLanes> lo;
    alignas(64) std::array<double, kLanes> hi;
    alignas(64) std::array<double, kLanes> target;
    alignas(64) std::array<double, kLanes> mid;
    alignas(64) std::array<double, kLanes> sigma;
    alignas(64) std::array<double, kLanes> negatives;
    for (int lane = 0; lane < kLanes; ++lane) {
      lo[lane] = -profile.bound;
      hi[lane] = profile.bound;
      target[lane] = static_cast<double>(std::min(first + lane, dim - 1));
    }

    for (int it = 0; it < kMaxIterations; ++it) {
      bool all_done = true;
      for (int lane = 0; lane < kLanes; ++lane) {
        all_done = all_done && converged(lo[lane], hi[lane]);
        mid[lane] = midpoint(profile, lo[lane], hi[lane]);
        sigma[lane] = 0.0;
        negatives[lane] = 0.0;
      }
      if (all_done) break;

      for (std::size_t r = 0; r < dim; ++r) {
        const double tau = clique[r];
        const double a = shift[r];
        const double b = inv_size[r];
#pragma omp simd
        for (int lane = 0; lane < kLanes; ++lane) {
          const double off = tau + sigma[lane];
          const double diag = a + mid[lane] * b;
          double pivot = off - diag;
          pivot = std::abs(pivot) < kPivotFloor ? -kPivotFloor : pivot;
          negatives[lane] += pivot < 0.0 ? 1.0 : 0.0;
          sigma[lane] = -tau - diag * (off / pivot);
        }
      }

      for (int lane = 0; lane < kLanes; ++lane) {
        if (converged(lo[lane], hi[lane])) continue;
        if (negatives[lane] <= target[lane])
          lo[lane] = mid[lane];
        else
          hi[lane] = mid[lane];
      }
    }

    for (int lane = 0; lane < kLanes && first + lane < dim; ++lane)
      out[first + lane] = 0.5 * (lo[lane] + hi[lane]);
  }
  return out;
}

}  // namespace thspec
