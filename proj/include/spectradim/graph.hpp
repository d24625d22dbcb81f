#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spectradim {

using VertexId = std::uint32_t;

struct WeightedEdge {
  VertexId u;
  VertexId v;
  double w = 1.0;
};

/// Counts of what canonicalization removed from the raw input.
struct CanonicalizationStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

/// Immutable simple undirected graph in CSR form.
///
/// Every edge {u, v} is stored twice (u -> v and v -> u) with equal weight.
/// Neighbour lists are sorted ascending. Unweighted graphs carry no weight
/// array and report weight 1 for every edge.
class Graph {
public:
  Graph() = default;

  /// Builds the canonical graph from a raw edge list: self-loops are
  /// dropped, direction is ignored and duplicate edges are merged (weights
  /// summed when `weighted`, otherwise kept at 1). Throws
  /// std::invalid_argument on an out-of-range endpoint or a non-positive or
  /// non-finite weight.
  static Graph from_edges(std::size_t n, std::span<const WeightedEdge> edges, bool weighted,
                          std::vector<std::int64_t> labels = {},
                          CanonicalizationStats* stats = nullptr);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }
  bool weighted() const noexcept { return !weights_.empty(); }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  /// Weights parallel to neighbors(v); empty for unweighted graphs.
  std::span<const double> weights(VertexId v) const noexcept {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }

  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Original identifier of vertex v (v itself when no labels were recorded).
  std::int64_t label(VertexId v) const noexcept {
    return labels_.empty() ? static_cast<std::int64_t>(v) : labels_[v];
  }
  const std::vector<std::int64_t>& labels() const noexcept { return labels_; }

  /// Each undirected edge once, u < v, sorted lexicographically.
  std::vector<WeightedEdge> edge_list() const;

  /// Structural equality: vertex count, adjacency and weights. Labels are metadata.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ && a.weights_ == b.weights_;
  }

private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<double> weights_;
  std::vector<std::int64_t> labels_;
};

struct ComponentDecomposition {
  std::vector<std::size_t> component_id;  // per vertex
  std::vector<std::size_t> sizes;         // per component
  std::size_t largest = 0;

  std::size_t count() const noexcept { return sizes.size(); }
};

/// Components are numbered in order of their smallest vertex.
ComponentDecomposition connected_components(const Graph& g);

/// Induced subgraph on the largest component (ties: lowest component index),
/// re-indexed in original vertex order with original labels kept.
Graph largest_connected_component(const Graph& g);

/// Renames vertex i to perm[i]. Throws std::invalid_argument unless perm is a
/// bijection on 0..n-1.
Graph permute_vertices(const Graph& g, std::span<const VertexId> perm);

}  // namespace spectradim
