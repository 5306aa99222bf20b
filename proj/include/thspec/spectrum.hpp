#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "thspec/model.hpp"

namespace thspec {

using BigInt = boost::multiprecision::cpp_int;

/// Relative tolerance for merging computed eigenvalues:
/// a ~ b iff |a - b| <= kMergeTolerance * max(1, |a|).
inline constexpr double kMergeTolerance = 1e-9;

bool eigenvalues_coincide(double a, double b);

/// A finite probability measure on the real line.
///
/// Exact mode carries integer multiplicities over n (weight = mult / n); it
/// describes a single graph. Mixture mode carries arbitrary positive weights
/// summing to one (mean spectral distributions).
class SpectralDistribution {
 public:
  enum class Mode { Exact, Mixture };

  struct Atom {
    double value;
    double weight;
    std::size_t multiplicity;  // 0 in mixture mode
  };

  // Atoms must be pairwise distinct; they are sorted by value on construction.
  static SpectralDistribution exact(std::size_t n,
                                    std::vector<std::pair<double, std::size_t>> atoms);
  static SpectralDistribution mixture(std::size_t n, std::vector<std::pair<double, double>> atoms);

  Mode mode() const { return mode_; }
  std::size_t n() const { return n_; }
  std::span<const Atom> atoms() const { return atoms_; }

  double total_weight() const;
  // Sum of weight * value^power.
  double moment(int power) const;
  // Weight of the atom coinciding with `value` (merge rule), 0 if none.
  double weight_at(double value) const;
  // Exact mode only: all n eigenvalues ascending, repeated by multiplicity.
  std::vector<double> eigenvalues() const;

 private:
  Mode mode_ = Mode::Exact;
  std::size_t n_ = 0;
  std::vector<Atom> atoms_;
};

/// Sorts and merges coinciding values (merge rule), summing weights; drops
/// atoms whose merged weight is zero up to `drop_below`.
std::vector<std::pair<double, double>> merge_atoms(std::vector<std::pair<double, double>> atoms,
                                                   double drop_below = 0.0);

struct TrivialMultiplicities {
  std::size_t c_minus1 = 0;
  std::size_t c_zero = 0;
};

/// Multiplicities of the eigenvalues -1 and 0 forced by the block structure.
TrivialMultiplicities trivial_multiplicities(const BlockDecomposition& d);

/// Quotient matrix of the equitable partition into the non-trivial blocks.
///
/// Rows and columns follow the block order k_m, l_{m-1}, k_{m-1}, ..., ending
/// with k_1 when s1 = 1 and with l_1 when s1 = 0; the trailing l_m block is
/// omitted. Entry (r, c) is the number of neighbours a vertex of block r has
/// in block c. Only the block list is stored.
class QuotientMatrix {
 public:
  struct Block {
    bool clique;  // k-block (1-run) vs l-block (0-run)
    std::size_t size;
  };

  QuotientMatrix(std::vector<Block> blocks, ModelVariant variant, int s1);

  std::size_t dim() const { return blocks_.size(); }
  ModelVariant variant() const { return variant_; }
  int s1() const { return s1_; }
  std::span<const Block> blocks() const { return blocks_; }

  std::int64_t entry(std::size_t r, std::size_t c) const;
  Eigen::MatrixXd dense() const;
  // D^{1/2} Q D^{-1/2} with D = diag(block sizes); symmetric, same spectrum.
  Eigen::MatrixXd symmetrized() const;

 private:
  std::vector<Block> blocks_;
  ModelVariant variant_;
  int s1_;
};

QuotientMatrix build_quotient(const BlockDecomposition& d);

enum class EigenMethod {
  Auto,       // Dense up to kDenseQuotientLimit, Bisection above
  Dense,      // symmetric QR on the symmetrized quotient
  Bisection,  // structured Sturm-count bisection, OpenMP parallel
};

inline constexpr std::size_t kDenseQuotientLimit = 96;

/// All dim() eigenvalues, ascending. Throws ConsistencyError if one
/// coincides with a trivial eigenvalue (-1 or 0 loopless, 0 with loops).
std::vector<double> quotient_eigenvalues(const QuotientMatrix& q,
                                         EigenMethod method = EigenMethod::Auto);

/// Full spectral distribution of the graph with decomposition d.
SpectralDistribution spectral_distribution(const BlockDecomposition& d,
                                           EigenMethod method = EigenMethod::Auto);

/// det(Q - lambda I). Exact (Bareiss over big integers) when lambda is an
/// integer, partial-pivot LU otherwise.
double charpoly_eval(const QuotientMatrix& q, double lambda);
BigInt charpoly_eval_exact(const QuotientMatrix& q, std::int64_t lambda);

}  // namespace thspec
