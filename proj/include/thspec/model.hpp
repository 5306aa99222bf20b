#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "thspec/distributions.hpp"

namespace thspec {

/// Loopless: A_ij = 1{X_i + X_j > theta} for i != j, zero diagonal.
/// SelfLoops: the same rule including i == j.
enum class ModelVariant { Loopless, SelfLoops };

std::string_view to_string(ModelVariant variant);
ModelVariant parse_variant(std::string_view text);

/// A {0,1} creation sequence, position 0 = innermost vertex.
///
/// Vertex at position b is joined to every position a < b iff bit b is 1; with
/// self-loops, position b carries a loop iff bit b is 1. Loopless sequences
/// satisfy bits[0] == bits[1].
class CreationSequence {
 public:
  CreationSequence(std::vector<std::uint8_t> bits, ModelVariant variant);

  std::size_t size() const { return bits_.size(); }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  ModelVariant variant() const { return variant_; }

  friend bool operator==(const CreationSequence&, const CreationSequence&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  ModelVariant variant_;
};

/// Run lengths of a creation sequence: 1-run k[0], 0-run l[0], ..., 1-run
/// k[m-1], 0-run l[m-1]. k[0] == 0 iff the sequence starts with 0, l[m-1] == 0
/// iff it ends with 1.
struct BlockDecomposition {
  std::vector<std::size_t> k;
  std::vector<std::size_t> l;
  ModelVariant variant = ModelVariant::Loopless;
  int s1 = 0;

  std::size_t m() const { return k.size(); }
  std::size_t n() const;

  // Throws ConfigError on a malformed block list.
  void validate() const;

  // Derives s1 from k[0] and validates.
  static BlockDecomposition from_blocks(std::vector<std::size_t> k, std::vector<std::size_t> l,
                                        ModelVariant variant);

  friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

/// A sample of the threshold model, stored implicitly as (X, theta).
class ThresholdGraph {
 public:
  ThresholdGraph(std::vector<double> values, double theta, ModelVariant variant);

  std::size_t n() const { return values_.size(); }
  double theta() const { return theta_; }
  ModelVariant variant() const { return variant_; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
  double theta_;
  ModelVariant variant_;
};

ThresholdGraph sample_graph(const DistributionSpec& spec, std::size_t n, double theta,
                            ModelVariant variant, std::uint64_t seed, std::uint64_t stream = 0);

/// Entry (i, j) of the adjacency matrix, 0-based. Throws std::out_of_range.
int adjacency_entry(const ThresholdGraph& g, std::size_t i, std::size_t j);

struct PeelResult {
  CreationSequence sequence;
  // vertex_at[pos] = index into g.values() of the vertex at sequence position pos.
  std::vector<std::size_t> vertex_at;
};

/// Peels the extreme vertices: with the current minimum and maximum, emit 1
/// and drop the maximum if their sum exceeds theta, otherwise emit 0 and drop
/// the minimum. Bits are assigned from position n-1 down to 1. Ties in X are
/// broken by original index.
PeelResult peel(const ThresholdGraph& g);

CreationSequence creation_sequence(const ThresholdGraph& g);

BlockDecomposition decompose(const CreationSequence& s);
CreationSequence expand(const BlockDecomposition& d);

/// Undirected edge, u <= v; u == v is a self-loop.
struct Edge {
  std::size_t u;
  std::size_t v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edges of the threshold graph on sequence positions 0..n-1, sorted.
std::vector<Edge> graph_from_sequence(const CreationSequence& s);

/// Edges of g on original vertex indices, by direct evaluation of the
/// adjacency rule (O(n^2)), sorted.
std::vector<Edge> threshold_edges(const ThresholdGraph& g);

}  // namespace thspec
