#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thspec/bisection.hpp"
#include "thspec/error.hpp"
#include "thspec/oracle.hpp"
#include "thspec/rng.hpp"
#include "thspec/spectrum.hpp"

using namespace thspec;

namespace {

BlockDecomposition random_blocks(Rng& rng, ModelVariant variant, std::size_t max_m, std::size_t max_size) {
  for (;;) {
    const std::size_t m = 1 + rng() % max_m;
    const bool s1 = rng() & 1;
    std::vector<std::size_t> k(m), l(m);
    for (std::size_t i = 0; i < m; ++i) {
      k[i] = 1 + rng() % max_size;
      l[i] = 1 + rng() % max_size;
    }
    l[m - 1] = rng() % (max_size + 1);
    if (!s1) {
      k[0] = 0;
      if (variant == ModelVariant::Loopless) l[0] = std::max<std::size_t>(l[0], 2);
    } else if (variant == ModelVariant::Loopless) {
      k[0] = std::max<std::size_t>(k[0], 2);
    }
    if (m == 1 && !s1 && l[0] == 0) continue;
    return BlockDecomposition::from_blocks(k, l, variant);
  }
}

std::vector<double> oracle_spectrum(const BlockDecomposition& d) {
  return dense_spectrum(dense_adjacency(expand(d))).eigenvalues;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("complete and null graphs") {
    const auto k4 = spectral_distribution(BlockDecomposition::from_blocks({4}, {0}, ModelVariant::Loopless));
    REQUIRE(k4.atoms().size() == 2);
    CHECK(k4.atoms()[0].value == -1.0);
    CHECK(k4.atoms()[0].multiplicity == 3);
    CHECK(k4.atoms()[1].value == doctest::Approx(3.0));
    CHECK(k4.atoms()[1].multiplicity == 1);

    const auto null = spectral_distribution(BlockDecomposition::from_blocks({0}, {5}, ModelVariant::Loopless));
    REQUIRE(null.atoms().size() == 1);
    CHECK(null.atoms()[0].value == 0.0);
    CHECK(null.atoms()[0].multiplicity == 5);
  }

  TEST_CASE("star with two leaves") {
    // 0 0 1: two isolated vertices then a dominating one.
    const auto d = decompose(CreationSequence({0, 0, 1}, ModelVariant::Loopless));
    const auto mu = spectral_distribution(d);
    REQUIRE(mu.atoms().size() == 3);
    CHECK(mu.atoms()[0].value == doctest::Approx(-std::sqrt(2.0)));
    CHECK(mu.weight_at(0.0) == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("sequence 11001010") {
    const auto d = decompose(CreationSequence({1, 1, 0, 0, 1, 0, 1, 0}, ModelVariant::Loopless));
    const auto c = trivial_multiplicities(d);
    CHECK(c.c_minus1 == 1);
    CHECK(c.c_zero == 2);
    const auto q = build_quotient(d);
    CHECK(q.dim() == 5);
    const auto fast = spectral_distribution(d).eigenvalues();
    CHECK(oracle::max_abs_diff(fast, oracle_spectrum(d)) < 1e-9);
  }

  TEST_CASE("quotient rows count neighbours in each block") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const auto d = random_blocks(rng, variant, 5, 4);
      const auto q = build_quotient(d);
      const auto a = dense_adjacency(expand(d));
      // Block start positions in sequence order: k_1, l_1, k_2, l_2, ...
      std::vector<std::pair<std::size_t, std::size_t>> spans;  // matches q's block order
      std::vector<std::size_t> k_start(d.m()), l_start(d.m());
      std::size_t pos = 0;
      for (std::size_t i = 0; i < d.m(); ++i) {
        k_start[i] = pos;
        pos += d.k[i];
        l_start[i] = pos;
        pos += d.l[i];
      }
      for (std::size_t i = d.m(); i-- > 0;) {
        if (i + 1 < d.m()) spans.emplace_back(l_start[i], d.l[i]);
        if (d.k[i] > 0) spans.emplace_back(k_start[i], d.k[i]);
      }
      REQUIRE(spans.size() == q.dim());
      for (std::size_t r = 0; r < q.dim(); ++r)
        for (std::size_t c = 0; c < q.dim(); ++c) {
          const auto row = static_cast<Eigen::Index>(spans[r].first);
          double neighbours = 0.0;
          for (std::size_t j = 0; j < spans[c].second; ++j)
            neighbours += a(row, static_cast<Eigen::Index>(spans[c].first + j));
          CHECK(static_cast<double>(q.entry(r, c)) == neighbours);
        }
      const auto printed = oracle::printed_matrix(d.k, d.l, d.s1, variant == ModelVariant::SelfLoops);
      for (std::size_t r = 0; r < q.dim(); ++r)
        for (std::size_t c = 0; c < q.dim(); ++c) CHECK(q.entry(r, c) == printed[r][c]);
    }
  }

  TEST_CASE("both eigen methods match the dense oracle") {
    Rng rng(12);
    for (int t = 0; t < 300; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const auto d = random_blocks(rng, variant, 12, 6);
      const auto expected = oracle_spectrum(d);
      for (const auto method : {EigenMethod::Dense, EigenMethod::Bisection}) {
        const auto mu = spectral_distribution(d, method);
        CHECK(oracle::max_abs_diff(mu.eigenvalues(), expected) < 1e-9);
      }
      const auto c = trivial_multiplicities(d);
      CHECK(oracle::count_near(expected, 0.0) == c.c_zero);
      if (variant == ModelVariant::Loopless) CHECK(oracle::count_near(expected, -1.0) == c.c_minus1);
    }
  }

  TEST_CASE("bisection survives midpoints that zero a pivot") {
    // Bisection midpoints land exactly on -1 and on k-block sizes minus one here.
    const std::vector<BlockDecomposition> cases{
        BlockDecomposition::from_blocks({2, 1, 6, 5, 4}, {3, 1, 4, 5, 1}, ModelVariant::Loopless),
        BlockDecomposition::from_blocks({4, 1, 5, 4}, {1, 4, 4, 5}, ModelVariant::Loopless),
        BlockDecomposition::from_blocks({5, 2, 2}, {4, 2, 4}, ModelVariant::SelfLoops)};
    for (const auto& d : cases) {
      const auto q = build_quotient(d);
      const auto dense = quotient_eigenvalues(q, EigenMethod::Dense);
      CHECK(oracle::max_abs_diff(bisect_eigenvalues_serial(staircase_profile(q)), dense) < 1e-9);
      CHECK(oracle::max_abs_diff(bisect_eigenvalues(staircase_profile(q)), dense) < 1e-9);
    }
  }

  TEST_CASE("trace identities") {
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const auto d = random_blocks(rng, variant, 10, 8);
      const auto s = expand(d);
      const auto edges = graph_from_sequence(s);
      double loops = 0.0, links = 0.0;
      for (const auto& e : edges) (e.u == e.v ? loops : links) += 1.0;
      const auto mu = spectral_distribution(d);
      const double n = static_cast<double>(d.n());
      CHECK(mu.moment(1) * n == doctest::Approx(loops).epsilon(1e-9).scale(n));
      CHECK(mu.moment(2) * n == doctest::Approx(2.0 * links + loops).epsilon(1e-9));
      CHECK(mu.total_weight() == doctest::Approx(1.0));
    }
  }

  TEST_CASE("serial and parallel bisection agree") {
    Rng rng(14);
    for (int t = 0; t < 40; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const auto d = random_blocks(rng, variant, 150, 5);
      const auto profile = staircase_profile(build_quotient(d));
      const auto serial = bisect_eigenvalues_serial(profile);
      const auto parallel = bisect_eigenvalues(profile);
      REQUIRE(serial.size() == parallel.size());
      const double scale = std::max(1.0, std::abs(serial.back()));
      CHECK(oracle::max_abs_diff(serial, parallel) <= 1e-12 * scale);
      CHECK(count_below(profile, -profile.bound) == 0);
      CHECK(count_below(profile, profile.bound) == profile.dim());
      CHECK(std::is_sorted(parallel.begin(), parallel.end()));
    }
  }

  TEST_CASE("large quotient agrees with the symmetric eigensolver") {
    Rng rng(15);
    const auto d = random_blocks(rng, ModelVariant::Loopless, 300, 3);
    const auto q = build_quotient(d);
    REQUIRE(q.dim() > kDenseQuotientLimit);
    const auto a = quotient_eigenvalues(q, EigenMethod::Dense);
    const auto b = quotient_eigenvalues(q, EigenMethod::Bisection);
    CHECK(oracle::max_abs_diff(a, b) < 1e-9 * std::max(1.0, std::abs(a.back())));
  }

  TEST_CASE("characteristic polynomial vanishes at quotient eigenvalues") {
    Rng rng(16);
    for (int t = 0; t < 100; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const auto d = random_blocks(rng, variant, 4, 5);
      const auto q = build_quotient(d);
      if (q.dim() == 0) continue;
      const double scale = std::abs(charpoly_eval(q, 0.5)) + 1.0;
      for (double lambda : quotient_eigenvalues(q)) {
        const double near = std::abs(charpoly_eval(q, lambda));
        CHECK(near <= 1e-6 * std::max(scale, std::pow(std::abs(lambda) + 1.0, double(q.dim()))));
      }
    }
  }

  TEST_CASE("exact determinants at -1 and 0") {
    Rng rng(17);
    for (int t = 0; t < 2000; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const auto d = random_blocks(rng, variant, 8, 10);
      const auto q = build_quotient(d);
      const auto printed = oracle::printed_matrix(d.k, d.l, d.s1, variant == ModelVariant::SelfLoops);
      for (std::int64_t lambda : {-1, 0, 2}) {
        const __int128 ref = oracle::determinant(printed, lambda);
        CHECK(charpoly_eval_exact(q, lambda) == BigInt(static_cast<long long>(ref)));
      }
      // Sign-corrected closed forms.
      const BigInt sign = (d.m() % 2 == 1) ? 1 : -1;
      if (variant == ModelVariant::Loopless && !(d.s1 == 0 && d.m() == 1)) {
        const auto [at_minus1, at_zero] = oracle::printed_products(d.k, d.l, d.s1);
        CHECK(charpoly_eval_exact(q, -1) == sign * at_minus1);
        CHECK(charpoly_eval_exact(q, 0) == sign * at_zero);
      }
      if (variant == ModelVariant::SelfLoops && q.dim() > 0) {
        BigInt product = 1;
        for (std::size_t i = 0; i < d.m(); ++i) {
          if (d.k[i] > 0) product *= d.k[i];
          if (i + 1 < d.m()) product *= d.l[i];
        }
        CHECK(charpoly_eval_exact(q, 0) == sign * product);
      }
    }
  }

  TEST_CASE("quotient eigenvalues avoid the trivial values") {
    Rng rng(18);
    for (int t = 0; t < 500; ++t) {
      const auto variant = t % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      for (double lambda : quotient_eigenvalues(build_quotient(random_blocks(rng, variant, 8, 10)))) {
        CHECK(std::abs(lambda) > 1e-6);
        if (variant == ModelVariant::Loopless) CHECK(std::abs(lambda + 1.0) > 1e-6);
      }
    }
  }

  TEST_CASE("atom merging") {
    const auto merged = merge_atoms({{1.0, 0.25}, {1.0 + 1e-12, 0.5}, {2.0, 0.25}, {3.0, 0.0}});
    REQUIRE(merged.size() == 2);
    CHECK(merged[0].first == 1.0 + 1e-12);
    CHECK(merged[0].second == doctest::Approx(0.75));
    CHECK(eigenvalues_coincide(1e6, 1e6 + 1e-4));
    CHECK_FALSE(eigenvalues_coincide(0.0, 1e-8));
    CHECK_THROWS(SpectralDistribution::exact(3, {{0.0, 1}, {1.0, 1}}));
    CHECK_THROWS(SpectralDistribution::mixture(0, {{0.0, 0.5}, {1.0, 0.25}}));
  }

  TEST_CASE("dense oracle rank and cap") {
    const auto k5 = dense_spectrum(dense_adjacency(CreationSequence({1, 1, 1, 1, 1}, ModelVariant::Loopless)));
    CHECK(k5.rank == 5);
    const auto star = dense_spectrum(dense_adjacency(CreationSequence({0, 0, 0, 1}, ModelVariant::Loopless)));
    CHECK(star.rank == 2);
    const ThresholdGraph g(std::vector<double>(10, 0.0), 0.0, ModelVariant::Loopless);
    CHECK_THROWS_AS(dense_adjacency(g, 9), ResourceError);
  }
}
