#include "thspec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "thspec/error.hpp"

namespace thspec {

std::string_view to_string(ModelVariant variant) {
  return variant == ModelVariant::Loopless ? "loopless" : "self-loops";
}

ModelVariant parse_variant(std::string_view text) {
  if (text == "loopless") return ModelVariant::Loopless;
  if (text == "self-loops" || text == "selfloops" || text == "self_loops")
    return ModelVariant::SelfLoops;
  throw ConfigError("unknown model variant '" + std::string(text) +
                    "' (expected loopless or self-loops)");
}

CreationSequence::CreationSequence(std::vector<std::uint8_t> bits, ModelVariant variant)
    : bits_(std::move(bits)), variant_(variant) {
  for (auto b : bits_)
    if (b > 1) throw ConfigError("creation sequence: bits must be 0 or 1");
  if (variant_ == ModelVariant::Loopless) {
    if (bits_.size() < 2) throw ConfigError("creation sequence: loopless requires n >= 2");
    if (bits_[0] != bits_[1])
      throw ConfigError("creation sequence: loopless requires s1 == s2");
  } else if (bits_.empty()) {
    throw ConfigError("creation sequence: n must be positive");
  }
}

std::size_t BlockDecomposition::n() const {
  return std::accumulate(k.begin(), k.end(), std::size_t{0}) +
         std::accumulate(l.begin(), l.end(), std::size_t{0});
}

void BlockDecomposition::validate() const {
  if (k.empty() || k.size() != l.size())
    throw ConfigError("blocks: k and l must be non-empty and of equal length");
  const std::size_t mm = k.size();
  for (std::size_t i = 1; i < mm; ++i)
    if (k[i] == 0) throw ConfigError("blocks: k_2..k_m must be positive");
  for (std::size_t i = 0; i + 1 < mm; ++i)
    if (l[i] == 0) throw ConfigError("blocks: l_1..l_{m-1} must be positive");
  if (s1 != (k[0] > 0 ? 1 : 0)) throw ConfigError("blocks: s1 must equal 1{k_1 > 0}");
  if (n() == 0) throw ConfigError("blocks: empty decomposition");
  if (variant == ModelVariant::Loopless) {
    if (s1 == 1 && k[0] < 2) throw ConfigError("blocks: loopless s1=1 requires k_1 >= 2");
    if (s1 == 0 && l[0] < 2) throw ConfigError("blocks: loopless s1=0 requires l_1 >= 2");
  }
}

BlockDecomposition BlockDecomposition::from_blocks(std::vector<std::size_t> k,
                                                   std::vector<std::size_t> l,
                                                   ModelVariant variant) {
  BlockDecomposition d{std::move(k), std::move(l), variant, 0};
  d.s1 = (!d.k.empty() && d.k[0] > 0) ? 1 : 0;
  d.validate();
  return d;
}

ThresholdGraph::ThresholdGraph(std::vector<double> values, double theta, ModelVariant variant)
    : values_(std::move(values)), theta_(theta), variant_(variant) {
  if (!std::isfinite(theta_)) throw ConfigError("graph: theta must be finite");
  if (values_.empty()) throw ConfigError("graph: n must be positive");
  if (variant_ == ModelVariant::Loopless && values_.size() < 2)
    throw ConfigError("graph: loopless model requires n >= 2");
  for (double v : values_)
    if (!std::isfinite(v)) throw ConfigError("graph: hidden values must be finite");
}

ThresholdGraph sample_graph(const DistributionSpec& spec, std::size_t n, double theta,
                            ModelVariant variant, std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> values(n);
  Rng rng(seed, stream);
  sample_into(spec, rng, values);
  return ThresholdGraph(std::move(values), theta, variant);
}

int adjacency_entry(const ThresholdGraph& g, std::size_t i, std::size_t j) {
  if (i >= g.n() || j >= g.n()) throw std::out_of_range("adjacency_entry: vertex out of range");
  if (i == j && g.variant() == ModelVariant::Loopless) return 0;
  return g.values()[i] + g.values()[j] > g.theta() ? 1 : 0;
}

PeelResult peel(const ThresholdGraph& g) {
  const std::size_t n = g.n();
  const auto x = g.values();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && a < b);
  });

  std::vector<std::uint8_t> bits(n);
  std::vector<std::size_t> vertex_at(n);
  std::size_t lo = 0;
  std::size_t hi = n - 1;
  for (std::size_t pos = n - 1; pos >= 1; --pos) {
    if (x[order[lo]] + x[order[hi]] > g.theta()) {
      bits[pos] = 1;
      vertex_at[pos] = order[hi--];
    } else {
      bits[pos] = 0;
      vertex_at[pos] = order[lo++];
    }
  }
  vertex_at[0] = order[lo];
  if (g.variant() == ModelVariant::Loopless) {
    bits[0] = bits[1];
  } else {
    const double last = x[order[lo]];
    bits[0] = last + last > g.theta() ? 1 : 0;
  }
  return {CreationSequence(std::move(bits), g.variant()), std::move(vertex_at)};
}

CreationSequence creation_sequence(const ThresholdGraph& g) { return peel(g).sequence; }

BlockDecomposition decompose(const CreationSequence& s) {
  BlockDecomposition d;
  d.variant = s.variant();
  const auto bits = s.bits();
  std::size_t i = 0;
  do {
    std::size_t ones = 0;
    while (i < bits.size() && bits[i] == 1) ++ones, ++i;
    std::size_t zeros = 0;
    while (i < bits.size() && bits[i] == 0) ++zeros, ++i;
    d.k.push_back(ones);
    d.l.push_back(zeros);
  } while (i < bits.size());
  d.s1 = bits[0];
  return d;
}

CreationSequence expand(const BlockDecomposition& d) {
  d.validate();
  std::vector<std::uint8_t> bits;
  bits.reserve(d.n());
  for (std::size_t i = 0; i < d.m(); ++i) {
    bits.insert(bits.end(), d.k[i], std::uint8_t{1});
    bits.insert(bits.end(), d.l[i], std::uint8_t{0});
  }
  return CreationSequence(std::move(bits), d.variant);
}

std::vector<Edge> graph_from_sequence(const CreationSequence& s) {
  std::vector<Edge> edges;
  const bool loops = s.variant() == ModelVariant::SelfLoops;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (loops && s[a] == 1) edges.push_back({a, a});
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s[b] == 1) edges.push_back({a, b});
  }
  return edges;
}

std::vector<Edge> threshold_edges(const ThresholdGraph& g) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.n(); ++i)
    for (std::size_t j = i; j < g.n(); ++j)
      if (adjacency_entry(g, i, j) == 1) edges.push_back({i, j});
  return edges;
}

}  // namespace thspec
