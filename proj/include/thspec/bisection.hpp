#pragma once

#include <cstddef>
#include <vector>

namespace thspec {

class QuotientMatrix;

/// Generator form of the symmetrized quotient in printed block order:
///   T(r, c) = sqrt(d_r d_c) * clique[min(r, c)]   (r != c)
///   T(r, r) = clique[r] * (d_r - loop_shift)
/// Scaling by D^{-1/2} and eliminating from row 0 gives an O(J) LDL^T
/// recurrence for the inertia of T - x I:
///   sigma_0 = 0,  p_r = clique_r + sigma_r - (shift_r + x) / d_r,
///   sigma_{r+1} = sigma_r - (clique_r + sigma_r)^2 / p_r,
/// where the number of negative pivots p_r equals #{eigenvalues < x}.
struct StaircaseProfile {
  std::vector<double> clique;    // 1.0 for k-blocks, 0.0 for l-blocks
  std::vector<double> shift;     // loop_shift * clique / d
  std::vector<double> inv_size;  // 1 / d
  double bound = 0.0;            // spectral radius bound
  bool loopless = false;

  std::size_t dim() const { return clique.size(); }
};

StaircaseProfile staircase_profile(const QuotientMatrix& q);

std::size_t count_below(const StaircaseProfile& profile, double x);

/// Reference implementation: one eigenvalue at a time, scalar recurrence.
std::vector<double> bisect_eigenvalues_serial(const StaircaseProfile& profile);

/// Lanes of eigenvalue indices are bisected in lockstep (SIMD over lanes),
/// batches are distributed over OpenMP threads. Ascending order.
std::vector<double> bisect_eigenvalues(const StaircaseProfile& profile);

}  // namespace thspec
