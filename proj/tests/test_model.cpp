#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "thspec/error.hpp"
#include "thspec/model.hpp"
#include "thspec/rng.hpp"

using namespace thspec;

namespace {

std::vector<std::uint8_t> bits_of(const char* text) {
  std::vector<std::uint8_t> b;
  for (const char* c = text; *c; ++c) b.push_back(*c == '1');
  return b;
}

const std::vector<std::pair<DistributionSpec, double>> kRegimes{
    {Uniform{-1.0, 1.0}, 0.0},
    {Gaussian{0.0, 1.0}, 0.0},
    {Gaussian{0.0, 1.0}, 1.3},
    {DiscretePmf{{0, 1, 2, 3, 4, 5}, {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}}, 5.0},
    {Bernoulli{0.4}, 0.5},
};

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("complete graph from constant values") {
    const ThresholdGraph g({1, 1, 1, 1}, 0.0, ModelVariant::Loopless);
    const auto s = creation_sequence(g);
    CHECK(std::vector<std::uint8_t>(s.bits().begin(), s.bits().end()) == bits_of("1111"));
    CHECK(threshold_edges(g).size() == 6);
  }

  TEST_CASE("edge rule is strict") {
    const ThresholdGraph g({0.5, 0.5, 0.0}, 1.0, ModelVariant::Loopless);
    CHECK(adjacency_entry(g, 0, 1) == 0);
    const ThresholdGraph h({0.5, 0.5000001, 0.0}, 1.0, ModelVariant::Loopless);
    CHECK(adjacency_entry(h, 0, 1) == 1);
    CHECK(adjacency_entry(h, 0, 0) == 0);
    CHECK_THROWS_AS(adjacency_entry(h, 0, 3), std::out_of_range);
  }

  TEST_CASE("self-loops follow 2X > theta") {
    const ThresholdGraph g({-1.0, 0.2, 0.7}, 0.5, ModelVariant::SelfLoops);
    CHECK(adjacency_entry(g, 0, 0) == 0);
    CHECK(adjacency_entry(g, 1, 1) == 0);
    CHECK(adjacency_entry(g, 2, 2) == 1);
  }

  TEST_CASE("block decomposition of 11001010") {
    const CreationSequence s(bits_of("11001010"), ModelVariant::Loopless);
    const auto d = decompose(s);
    CHECK(d.k == std::vector<std::size_t>{2, 1, 1});
    CHECK(d.l == std::vector<std::size_t>{2, 1, 1});
    CHECK(d.s1 == 1);
    CHECK(d.m() == 3);
    CHECK(expand(d) == s);
    CHECK(graph_from_sequence(s).size() == 11);
  }

  TEST_CASE("sequences starting with zero") {
    const auto d = decompose(CreationSequence(bits_of("0001100"), ModelVariant::Loopless));
    CHECK(d.k == std::vector<std::size_t>{0, 2});
    CHECK(d.l == std::vector<std::size_t>{3, 2});
    CHECK(d.s1 == 0);
  }

  TEST_CASE("loopless sequences tie the first two positions") {
    CHECK_THROWS_AS(CreationSequence(bits_of("10"), ModelVariant::Loopless), ConfigError);
    CHECK_NOTHROW(CreationSequence(bits_of("10"), ModelVariant::SelfLoops));
    CHECK_THROWS_AS(CreationSequence(std::vector<std::uint8_t>{0, 2}, ModelVariant::SelfLoops), ConfigError);
    CHECK_THROWS_AS(BlockDecomposition::from_blocks({1, 1}, {1, 0}, ModelVariant::Loopless), ConfigError);
  }

  TEST_CASE("variant names") {
    CHECK(to_string(ModelVariant::SelfLoops) == "self-loops");
    CHECK(parse_variant("loopless") == ModelVariant::Loopless);
    CHECK_THROWS_AS(parse_variant("loops"), ConfigError);
  }

  TEST_CASE("decompose and expand are inverse on random sequences") {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
      const auto variant = trial % 2 ? ModelVariant::SelfLoops : ModelVariant::Loopless;
      const std::size_t n = 1 + rng() % 40;
      std::vector<std::uint8_t> b(n);
      for (auto& x : b) x = rng() & 1;
      if (variant == ModelVariant::Loopless) {
        if (n < 2) continue;
        b[0] = b[1];
      }
      const CreationSequence s(b, variant);
      const auto d = decompose(s);
      CHECK(d.n() == n);
      CHECK(expand(d) == s);
    }
  }

  TEST_CASE("peeling reproduces the adjacency rule") {
    int graphs = 0;
    for (const auto variant : {ModelVariant::Loopless, ModelVariant::SelfLoops}) {
      for (std::size_t r = 0; r < kRegimes.size(); ++r) {
        for (std::uint64_t t = 0; t < 60; ++t) {
          const std::size_t n = 2 + t % 39;
          const ThresholdGraph g = sample_graph(kRegimes[r].first, n, kRegimes[r].second, variant, 100 + r, t);
          const PeelResult p = peel(g);
          std::vector<Edge> mapped;
          for (const auto& e : graph_from_sequence(p.sequence)) {
            const auto u = p.vertex_at[e.u], v = p.vertex_at[e.v];
            mapped.push_back({std::min(u, v), std::max(u, v)});
          }
          std::sort(mapped.begin(), mapped.end());
          CHECK(mapped == threshold_edges(g));

          const auto a = oracle::adjacency(std::vector<double>(g.values().begin(), g.values().end()),
                                           g.theta(), variant == ModelVariant::SelfLoops);
          std::size_t direct = 0;
          for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = i; j < a.cols(); ++j) direct += a(i, j) != 0.0;
          CHECK(direct == mapped.size());

          std::set<std::size_t> seen(p.vertex_at.begin(), p.vertex_at.end());
          CHECK(seen.size() == n);
          ++graphs;
        }
      }
    }
    CHECK(graphs == 600);
  }

  TEST_CASE("ties in X are broken by index") {
    const ThresholdGraph g({0.0, 0.0, 0.0}, 0.0, ModelVariant::Loopless);
    const auto p = peel(g);
    CHECK(std::vector<std::uint8_t>(p.sequence.bits().begin(), p.sequence.bits().end()) == bits_of("000"));
    CHECK(p.vertex_at == std::vector<std::size_t>{2, 1, 0});
  }
}
