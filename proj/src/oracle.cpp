#include "thspec/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "thspec/error.hpp"

namespace thspec {

namespace {

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw ResourceError(fmt::format("dense adjacency: n = {} exceeds the cap {}", n, cap));
}

}  // namespace

Eigen::MatrixXd dense_adjacency(const ThresholdGraph& g, std::size_t cap) {
  check_cap(g.n(), cap);
  const auto n = static_cast<Eigen::Index>(g.n());
  const auto x = g.values();
  const double theta = g.theta();
  const bool loops = g.variant() == ModelVariant::SelfLoops;
  Eigen::MatrixXd a(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const bool edge = (i != j || loops) && x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)] > theta;
      a(i, j) = edge ? 1.0 : 0.0;
    }
  }
  return a;
}

Eigen::MatrixXd dense_adjacency(const CreationSequence& s, std::size_t cap) {
  check_cap(s.size(), cap);
  const auto n = static_cast<Eigen::Index>(s.size());
  const bool loops = s.variant() == ModelVariant::SelfLoops;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    if (s[static_cast<std::size_t>(b)] != 1) continue;
    if (loops) a(b, b) = 1.0;
    for (Eigen::Index c = 0; c < b; ++c) a(b, c) = a(c, b) = 1.0;
  }
  return a;
}

DenseSpectrum dense_spectrum(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ConfigError("dense_spectrum: matrix must be square");
  DenseSpectrum out;
  if (a.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  const double tolerance = 1e-8 * static_cast<double>(a.rows()) * a.cwiseAbs().maxCoeff();
  out.rank = static_cast<std::size_t>(std::count_if(
      out.eigenvalues.begin(), out.eigenvalues.end(), [&](double v) { return std::abs(v) > tolerance; }));
  return out;
}

}  // namespace thspec
