#include "thspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "thspec/bisection.hpp"
#include "thspec/error.hpp"

namespace thspec {

bool eigenvalues_coincide(double a, double b) {
  return std::abs(a - b) <= kMergeTolerance * std::max(1.0, std::abs(a));
}

// ---------------------------------------------------------------------------
// SpectralDistribution

namespace {

template <class Pair>
void sort_and_require_distinct(std::vector<Pair>& atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Pair& a, const Pair& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < atoms.size(); ++i)
    if (eigenvalues_coincide(atoms[i - 1].first, atoms[i].first))
      throw ConsistencyError(fmt::format("spectral distribution: atoms {} and {} coincide",
                                         atoms[i - 1].first, atoms[i].first));
}

}  // namespace

SpectralDistribution SpectralDistribution::exact(
    std::size_t n, std::vector<std::pair<double, std::size_t>> atoms) {
  if (n == 0) throw ConfigError("spectral distribution: n must be positive");
  sort_and_require_distinct(atoms);
  SpectralDistribution out;
  out.mode_ = Mode::Exact;
  out.n_ = n;
  std::size_t total = 0;
  for (const auto& [value, mult] : atoms) {
    if (mult == 0) continue;
    total += mult;
    out.atoms_.push_back({value, static_cast<double>(mult) / static_cast<double>(n), mult});
  }
  if (total != n)
    throw ConsistencyError(
        fmt::format("spectral distribution: multiplicities sum to {}, expected {}", total, n));
  return out;
}

SpectralDistribution SpectralDistribution::mixture(std::size_t n,
                                                   std::vector<std::pair<double, double>> atoms) {
  sort_and_require_distinct(atoms);
  SpectralDistribution out;
  out.mode_ = Mode::Mixture;
  out.n_ = n;
  double total = 0.0;
  for (const auto& [value, weight] : atoms) {
    if (!(weight > 0.0))
      throw ConsistencyError(fmt::format("mixture: non-positive weight {} at {}", weight, value));
    total += weight;
    out.atoms_.push_back({value, weight, 0});
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ConsistencyError(fmt::format("mixture: weights sum to {}", total));
  return out;
}

double SpectralDistribution::total_weight() const {
  if (mode_ == Mode::Exact) {
    std::size_t total = 0;
    for (const auto& a : atoms_) total += a.multiplicity;
    return static_cast<double>(total) / static_cast<double>(n_);
  }
  double total = 0.0;
  for (const auto& a : atoms_) total += a.weight;
  return total;
}

double SpectralDistribution::moment(int power) const {
  double acc = 0.0;
  for (const auto& a : atoms_) acc += a.weight * std::pow(a.value, power);
  return acc;
}

double SpectralDistribution::weight_at(double value) const {
  for (const auto& a : atoms_)
    if (eigenvalues_coincide(a.value, value)) return a.weight;
  return 0.0;
}

std::vector<double> SpectralDistribution::eigenvalues() const {
  if (mode_ != Mode::Exact)
    throw ConfigError("eigenvalues(): only defined for exact spectral distributions");
  std::vector<double> out;
  out.reserve(n_);
  for (const auto& a : atoms_) out.insert(out.end(), a.multiplicity, a.value);
  return out;
}

std::vector<std::pair<double, double>> merge_atoms(std::vector<std::pair<double, double>> atoms,
                                                   double drop_below) {
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<double, double>> out;
  std::size_t i = 0;
  while (i < atoms.size()) {
    std::size_t j = i;
    double weight = 0.0;
    std::size_t heaviest = i;
    while (j < atoms.size() && eigenvalues_coincide(atoms[i].first, atoms[j].first)) {
      weight += atoms[j].second;
      if (std::abs(atoms[j].second) > std::abs(atoms[heaviest].second)) heaviest = j;
      ++j;
    }
    if (std::abs(weight) > drop_below) out.emplace_back(atoms[heaviest].first, weight);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trivial eigenvalues and the quotient

TrivialMultiplicities trivial_multiplicities(const BlockDecomposition& d) {
  d.validate();
  const std::size_t m = d.m();
  const std::size_t s1 = static_cast<std::size_t>(d.s1);
  if (d.variant == ModelVariant::SelfLoops) return {0, d.n() - 2 * (m - 1) - s1};
  const std::size_t sum_k = std::accumulate(d.k.begin(), d.k.end(), std::size_t{0});
  const std::size_t sum_l = std::accumulate(d.l.begin(), d.l.end(), std::size_t{0});
  return {sum_k - (m - 1) - s1, sum_l - (m - 1)};
}

QuotientMatrix::QuotientMatrix(std::vector<Block> blocks, ModelVariant variant, int s1)
    : blocks_(std::move(blocks)), variant_(variant), s1_(s1) {
  for (const auto& b : blocks_)
    if (b.size == 0) throw ConfigError("quotient: empty block");
}

std::int64_t QuotientMatrix::entry(std::size_t r, std::size_t c) const {
  const auto size_c = static_cast<std::int64_t>(blocks_[c].size);
  if (r == c) {
    if (!blocks_[r].clique) return 0;
    return variant_ == ModelVariant::Loopless ? size_c - 1 : size_c;
  }
  // Two distinct blocks are fully joined iff the outer one (earlier row) is a k-block.
  return blocks_[std::min(r, c)].clique ? size_c : 0;
}

Eigen::MatrixXd QuotientMatrix::dense() const {
  const auto j = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd out(j, j);
  for (Eigen::Index r = 0; r < j; ++r)
    for (Eigen::Index c = 0; c < j; ++c)
      out(r, c) = static_cast<double>(entry(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
  return out;
}

Eigen::MatrixXd QuotientMatrix::symmetrized() const {
  const auto j = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd out(j, j);
  for (Eigen::Index r = 0; r < j; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    out(r, r) = static_cast<double>(entry(ru, ru));
    for (Eigen::Index c = r + 1; c < j; ++c) {
      const auto cu = static_cast<std::size_t>(c);
      const double value =
          blocks_[ru].clique
              ? std::sqrt(static_cast<double>(blocks_[ru].size) * static_cast<double>(blocks_[cu].size))
              : 0.0;
      out(r, c) = value;
      out(c, r) = value;
    }
  }
  return out;
}

QuotientMatrix build_quotient(const BlockDecomposition& d) {
  d.validate();
  std::vector<QuotientMatrix::Block> blocks;
  const std::size_t m = d.m();
  for (std::size_t i = m; i-- > 0;) {
    if (i + 1 < m) blocks.push_back({false, d.l[i]});
    if (d.k[i] > 0) blocks.push_back({true, d.k[i]});
  }
  return QuotientMatrix(std::move(blocks), d.variant, d.s1);
}

std::vector<double> quotient_eigenvalues(const QuotientMatrix& q, EigenMethod method) {
  const std::size_t j = q.dim();
  if (j == 0) return {};
  if (method == EigenMethod::Auto)
    method = j <= kDenseQuotientLimit ? EigenMethod::Dense : EigenMethod::Bisection;

  std::vector<double> values;
  if (method == EigenMethod::Dense) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q.symmetrized(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalError("quotient eigensolver did not converge");
    values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + j);
  } else {
    values = bisect_eigenvalues(staircase_profile(q));
  }
  std::sort(values.begin(), values.end());

  for (double v : values) {
    const bool hits_zero = eigenvalues_coincide(v, 0.0);
    const bool hits_minus_one =
        q.variant() == ModelVariant::Loopless && eigenvalues_coincide(v, -1.0);
    if (hits_zero || hits_minus_one)
      throw ConsistencyError(
          fmt::format("quotient eigenvalue {} coincides with a trivial eigenvalue", v));
  }
  return values;
}

SpectralDistribution spectral_distribution(const BlockDecomposition& d, EigenMethod method) {
  const auto trivial = trivial_multiplicities(d);
  const auto lambdas = quotient_eigenvalues(build_quotient(d), method);

  std::vector<std::pair<double, std::size_t>> atoms;
  std::size_t i = 0;
  while (i < lambdas.size()) {
    std::size_t j = i + 1;
    double sum = lambdas[i];
    while (j < lambdas.size() && eigenvalues_coincide(lambdas[j - 1], lambdas[j])) sum += lambdas[j++];
    atoms.emplace_back(sum / static_cast<double>(j - i), j - i);
    i = j;
  }
  if (trivial.c_minus1 > 0) atoms.emplace_back(-1.0, trivial.c_minus1);
  if (trivial.c_zero > 0) atoms.emplace_back(0.0, trivial.c_zero);
  return SpectralDistribution::exact(d.n(), std::move(atoms));
}

// ---------------------------------------------------------------------------
// Characteristic polynomial

namespace {

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
    }
    previous = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

BigInt charpoly_eval_exact(const QuotientMatrix& q, std::int64_t lambda) {
  const std::size_t j = q.dim();
  std::vector<std::vector<BigInt>> a(j, std::vector<BigInt>(j));
  for (std::size_t r = 0; r < j; ++r)
    for (std::size_t c = 0; c < j; ++c) a[r][c] = q.entry(r, c) - (r == c ? lambda : 0);
  return bareiss_determinant(std::move(a));
}

double charpoly_eval(const QuotientMatrix& q, double lambda) {
  if (std::nearbyint(lambda) == lambda && std::abs(lambda) < 0x1.0p53)
    return charpoly_eval_exact(q, static_cast<std::int64_t>(lambda)).convert_to<double>();
  if (q.dim() == 0) return 1.0;
  const auto j = static_cast<Eigen::Index>(q.dim());
  const Eigen::MatrixXd shifted = q.dense() - lambda * Eigen::MatrixXd::Identity(j, j);
  return shifted.partialPivLu().determinant();
}

}  // namespace thspec
