#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thspec/binary.hpp"
#include "thspec/error.hpp"

using namespace thspec;

namespace {

// Mean spectrum of G_n(p) by enumerating all 2^n hidden-value vectors.
std::vector<std::pair<double, double>> enumerate_mean(std::size_t n, double p) {
  std::vector<std::pair<double, double>> atoms;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> x(n);
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = (mask >> i) & 1 ? 1.0 : 0.0;
      prob *= x[i] == 1.0 ? p : 1.0 - p;
    }
    for (double lambda : oracle::eigenvalues(oracle::adjacency(x, 0.5, false)))
      atoms.emplace_back(lambda, prob / static_cast<double>(n));
  }
  return merge_atoms(atoms);
}

void check_same(const SpectralDistribution& mu, const std::vector<std::pair<double, double>>& expected,
                double tol) {
  REQUIRE(mu.atoms().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(mu.atoms()[i].value - expected[i].first) <= tol);
    CHECK(std::abs(mu.atoms()[i].weight - expected[i].second) <= tol);
  }
}

}  // namespace

TEST_SUITE("binary") {
  TEST_CASE("lambda pairs") {
    CHECK(lambda_pm(1, 1).minus == doctest::Approx(-1.0));
    CHECK(lambda_pm(1, 1).plus == doctest::Approx(1.0));
    for (std::size_t l : {1, 2, 7, 100}) {
      CHECK(lambda_pm(0, l).minus == -1.0);
      CHECK(lambda_pm(0, l).plus == 0.0);
    }
    CHECK(lambda_pm(2, 2).minus == doctest::Approx((1.0 - std::sqrt(17.0)) / 2.0));
    CHECK(lambda_pm(2, 2).plus == doctest::Approx((1.0 + std::sqrt(17.0)) / 2.0));
    CHECK(lambda_pm(5, 0).minus == 0.0);
    CHECK(lambda_pm(5, 0).plus == 4.0);
    CHECK_THROWS_AS(lambda_pm(0, 0), ConfigError);
  }

  TEST_CASE("Vieta relations and tracelessness") {
    for (std::size_t k = 0; k <= 60; ++k)
      for (std::size_t l = 0; l <= 60; ++l) {
        if (k + l == 0) continue;
        const auto [minus, plus] = lambda_pm(k, l);
        const double kd = double(k), ld = double(l);
        CHECK(minus <= 0.0);
        CHECK(plus >= 0.0);
        CHECK(minus + plus == doctest::Approx(kd - 1.0));
        CHECK(minus * plus == doctest::Approx(-kd * ld));
        if (k >= 1 && l >= 1) CHECK(std::abs(binary_sample_spectrum(k, l).moment(1)) < 1e-12);
      }
  }

  TEST_CASE("sample spectra") {
    const auto mu = binary_sample_spectrum(2, 2);
    REQUIRE(mu.atoms().size() == 4);
    CHECK(mu.weight_at(-1.0) == doctest::Approx(0.25));
    CHECK(mu.weight_at(0.0) == doctest::Approx(0.25));
    CHECK(mu.weight_at((1.0 + std::sqrt(17.0)) / 2.0) == doctest::Approx(0.25));
    CHECK(mu.weight_at((1.0 - std::sqrt(17.0)) / 2.0) == doctest::Approx(0.25));

    const auto complete = binary_sample_spectrum(6, 0);
    REQUIRE(complete.atoms().size() == 2);
    CHECK(complete.atoms()[0].multiplicity == 5);
    CHECK(complete.atoms()[1].value == doctest::Approx(5.0));

    const auto star = binary_sample_spectrum(1, 2);
    REQUIRE(star.atoms().size() == 3);
    CHECK(star.atoms()[0].value == doctest::Approx(-std::sqrt(2.0)));
    CHECK(star.weight_at(0.0) == doctest::Approx(1.0 / 3.0));

    const auto complete_by_l1 = binary_sample_spectrum(4, 1);
    CHECK(complete_by_l1.weight_at(-1.0) == doctest::Approx(0.8));
    CHECK(complete_by_l1.atoms().size() == 2);
  }

  TEST_CASE("sample spectra match dense spectra") {
    for (std::size_t k = 0; k <= 12; ++k)
      for (std::size_t l = 0; l <= 12; ++l) {
        if (k + l == 0) continue;
        const auto expected = oracle::eigenvalues(oracle::adjacency(binary_hidden_values(k, l), 0.0, false));
        CHECK(oracle::max_abs_diff(binary_sample_spectrum(k, l).eigenvalues(), expected) < 1e-10);
      }
  }

  TEST_CASE("mean spectrum for n = 2, p = 1/2") {
    const auto mu = binary_mean_spectrum({2, 0.5, 0.0});
    check_same(mu, {{-1.0, 0.375}, {0.0, 0.25}, {1.0, 0.375}}, 1e-15);
    check_same(mu, enumerate_mean(2, 0.5), 1e-12);
  }

  TEST_CASE("mean spectrum matches enumeration and the binomial mixture") {
    for (std::size_t n = 2; n <= 8; ++n)
      for (double p : {0.1, 0.3, 0.5, 0.85}) {
        const auto mu = binary_mean_spectrum({n, p, 0.0});
        check_same(mu, enumerate_mean(n, p), 1e-12);
        check_same(mu, oracle::binary_mixture(n, p), 1e-12);
        CHECK(mu.total_weight() == doctest::Approx(1.0).epsilon(1e-14));
      }
  }

  TEST_CASE("large n approaches the limit") {
    const auto mu = binary_mean_spectrum({10000, 0.3, 0.0});
    CHECK(std::abs(mu.weight_at(-1.0) - (0.3 - 1e-4)) < 1e-12);
    CHECK(std::abs(mu.weight_at(-1.0) - 0.3) <= 1e-4 + 1e-15);
    CHECK(mu.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    const auto lim = binary_limit(0.5);
    CHECK(lim.weight_at(-1.0) == 0.5);
    CHECK(lim.weight_at(0.0) == 0.5);
    CHECK(binary_limit(0.3).weight_at(-1.0) == 0.3);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(binary_mean_spectrum({10, 0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(binary_mean_spectrum({10, 0.5, 1.0}), ConfigError);
    CHECK_THROWS_AS(binary_mean_spectrum({1, 0.5, 0.0}), ConfigError);
    CHECK_THROWS_AS(binary_limit(1.0), ConfigError);
  }
}
