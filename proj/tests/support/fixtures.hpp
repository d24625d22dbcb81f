#pragma once

// Test-only fixtures and oracles. Nothing here calls the eigensolvers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "spectradim/graph.hpp"

namespace spectradim::testing {

/// Normalized-Laplacian eigenvalues of the periodic lattice with the given
/// axis lengths, sorted: 1 - (1/d) sum_a cos(2 pi k_a / L_a).
inline std::vector<double> analytic_torus_spectrum(const std::vector<std::size_t>& dims) {
  std::vector<double> sums{0.0};
  for (std::size_t len : dims) {
    std::vector<double> next;
    next.reserve(sums.size() * len);
    for (double s : sums) {
      for (std::size_t k = 0; k < len; ++k) {
        next.push_back(s + std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len)));
      }
    }
    sums = std::move(next);
  }
  const auto d = static_cast<double>(dims.size());
  for (double& s : sums) s = 1.0 - s / d;
  std::sort(sums.begin(), sums.end());
  return sums;
}

inline std::vector<VertexId> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Erdos-Renyi edges at the given mean degree plus a random Hamiltonian path,
/// so the result is connected by construction. Offsets ids by `base`.
inline void append_connected_piece(std::vector<WeightedEdge>& edges, std::size_t base, std::size_t n,
                                   double mean_degree, std::mt19937_64& rng) {
  const auto path = random_permutation(n, rng);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<VertexId>(base + path[i]), static_cast<VertexId>(base + path[i + 1]), 1.0});
  }
  const double p = std::min(1.0, mean_degree / static_cast<double>(n > 1 ? n - 1 : 1));
  std::bernoulli_distribution coin(p);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({static_cast<VertexId>(base + u), static_cast<VertexId>(base + v), 1.0});
    }
  }
}

inline Graph random_connected_graph(std::size_t n, double mean_degree, std::mt19937_64& rng) {
  std::vector<WeightedEdge> edges;
  append_connected_piece(edges, 0, n, mean_degree, rng);
  return Graph::from_edges(n, edges, false);
}

/// Periodic 2-D lattice with a few random long-range shortcuts.
inline Graph random_lattice_mixture(std::size_t rows, std::size_t cols, std::size_t shortcuts,
                                    std::mt19937_64& rng) {
  const std::size_t n = rows * cols;
  std::vector<WeightedEdge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<VertexId>(r * cols + c);
      edges.push_back({v, static_cast<VertexId>(r * cols + (c + 1) % cols), 1.0});
      edges.push_back({v, static_cast<VertexId>(((r + 1) % rows) * cols + c), 1.0});
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < shortcuts; ++i) {
    edges.push_back({static_cast<VertexId>(pick(rng)), static_cast<VertexId>(pick(rng)), 1.0});
  }
  return Graph::from_edges(n, edges, false);
}

struct KnownComponents {
  Graph graph;
  std::size_t components;
};

/// Disjoint union of connected pieces, vertex ids shuffled.
inline KnownComponents random_disconnected_graph(std::size_t pieces, std::size_t max_piece,
                                                 std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size_dist(2, max_piece);
  std::vector<WeightedEdge> edges;
  std::size_t n = 0;
  for (std::size_t p = 0; p < pieces; ++p) {
    const std::size_t size = size_dist(rng);
    append_connected_piece(edges, n, size, 3.0, rng);
    n += size;
  }
  const auto perm = random_permutation(n, rng);
  for (auto& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  return {Graph::from_edges(n, edges, false), pieces};
}

}  // namespace spectradim::testing
