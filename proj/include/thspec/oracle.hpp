#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "thspec/model.hpp"

namespace thspec {

/// Dense matrices above this order are refused unless the caller raises the cap.
inline constexpr std::size_t kDefaultDenseCap = 4096;

/// n x n adjacency matrix of g, rows filled in parallel. O(n^2) memory.
Eigen::MatrixXd dense_adjacency(const ThresholdGraph& g, std::size_t cap = kDefaultDenseCap);

/// Adjacency matrix of the threshold graph on sequence positions.
Eigen::MatrixXd dense_adjacency(const CreationSequence& s, std::size_t cap = kDefaultDenseCap);

struct DenseSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::size_t rank = 0;
};

/// Full spectrum by symmetric QR; rank counts |lambda| > 1e-8 * n * max|a_ij|.
DenseSpectrum dense_spectrum(const Eigen::MatrixXd& a);

}  // namespace thspec
