#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "thspec/distributions.hpp"
#include "thspec/error.hpp"
#include "thspec/rng.hpp"
#include "thspec/stats.hpp"

using namespace thspec;

TEST_SUITE("distributions") {
  TEST_CASE("splitmix64 reference output") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ULL);
  }

  TEST_CASE("rng streams are reproducible and distinct") {
    Rng a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 16; ++i) {
      const auto x = a();
      CHECK(x == b());
      differs |= x != c();
    }
    CHECK(differs);
  }

  TEST_CASE("uniform draws stay in range") {
    Rng r(5);
    for (int i = 0; i < 10000; ++i) {
      const double u = r.uniform();
      CHECK((u >= 0.0 && u < 1.0));
      const double v = r.uniform_positive();
      CHECK((v > 0.0 && v <= 1.0));
    }
  }

  TEST_CASE("validation rejects malformed laws") {
    CHECK_THROWS_AS(validate(Bernoulli{1.5}), ConfigError);
    CHECK_THROWS_AS(validate(Uniform{1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(Gaussian{0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(validate(DiscretePmf{{0.0, 1.0}, {0.5, 0.4}}), ConfigError);
    CHECK_THROWS_AS(validate(DiscretePmf{{1.0, 0.0}, {0.5, 0.5}}), ConfigError);
    CHECK_THROWS_AS(validate(DiscretePmf{{}, {}}), ConfigError);
    CHECK_NOTHROW(validate(Bernoulli{1.0}));
    CHECK_NOTHROW(validate(DiscretePmf{{0.0, 1.0, 2.0}, {0.25, 0.5, 0.25}}));
  }

  TEST_CASE("empirical moments match the laws") {
    const std::size_t n = 200000;
    const auto u = sample(Uniform{-1.0, 1.0}, n, 1);
    CHECK(std::abs(stats::mean(u)) < 0.01);
    CHECK(stats::sample_variance(u) == doctest::Approx(1.0 / 3.0).epsilon(0.02));
    const auto g = sample(Gaussian{2.0, 3.0}, n, 2);
    CHECK(std::abs(stats::mean(g) - 2.0) < 0.03);
    CHECK(stats::sample_variance(g) == doctest::Approx(9.0).epsilon(0.02));
    const auto b = sample(Bernoulli{0.3}, n, 3);
    CHECK(std::abs(stats::mean(b) - 0.3) < 0.005);
    const auto d = sample(DiscretePmf{{0.0, 2.0, 5.0}, {0.2, 0.5, 0.3}}, n, 4);
    const auto twos = static_cast<double>(std::count(d.begin(), d.end(), 2.0));
    CHECK(std::abs(twos / n - 0.5) < 0.005);
    CHECK(std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0 || x == 2.0 || x == 5.0; }));
  }

  TEST_CASE("sampling is deterministic per seed") {
    CHECK(sample(Gaussian{}, 100, 9) == sample(Gaussian{}, 100, 9));
    CHECK(sample(Gaussian{}, 100, 9) != sample(Gaussian{}, 100, 10));
  }

  TEST_CASE("cdf and symmetry") {
    CHECK(cdf(Bernoulli{0.3}, 0.0) == doctest::Approx(0.7));
    CHECK(cdf(Bernoulli{0.3}, 1.0) == doctest::Approx(1.0));
    CHECK(cdf(Bernoulli{0.3}, -0.1) == 0.0);
    CHECK(cdf(Uniform{-1.0, 1.0}, 0.5) == doctest::Approx(0.75));
    CHECK(cdf(Gaussian{}, 0.0) == doctest::Approx(0.5));
    CHECK(cdf(DiscretePmf{{0.0, 1.0}, {0.5, 0.5}}, 0.0) == doctest::Approx(0.5));
    CHECK(is_symmetric_around(Uniform{-1.0, 1.0}, 0.0));
    CHECK_FALSE(is_symmetric_around(Uniform{0.0, 1.0}, 0.0));
    CHECK(is_symmetric_around(Gaussian{3.0, 1.0}, 3.0));
    CHECK(is_symmetric_around(Bernoulli{0.5}, 0.5));
    CHECK(is_symmetric_around(DiscretePmf{{0.0, 1.0, 2.0}, {0.25, 0.5, 0.25}}, 1.0));
    CHECK(is_continuous(Gaussian{}));
    CHECK_FALSE(is_continuous(Bernoulli{}));
  }

  TEST_CASE("ks distance of a large normal sample is small") {
    const auto g = sample(Gaussian{0.0, 0.5}, 20000, 17);
    const double d = stats::ks_distance(g, [](double x) { return stats::normal_cdf(x, 0.0, 0.25); });
    CHECK(d < 1.95 / std::sqrt(20000.0));
    const double shifted = stats::ks_distance(g, [](double x) { return stats::normal_cdf(x, 1.0, 0.25); });
    CHECK(shifted > 0.5);
  }

  TEST_CASE("pairwise sum is exact on integers") {
    std::vector<double> v(100001);
    std::iota(v.begin(), v.end(), 0.0);
    CHECK(stats::pairwise_sum(v) == 5000050000.0);
  }
}
