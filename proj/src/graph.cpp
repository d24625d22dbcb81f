#include "spectradim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace spectradim {

Graph Graph::from_edges(std::size_t n, std::span<const WeightedEdge> edges, bool weighted,
                        std::vector<std::int64_t> labels, CanonicalizationStats* stats) {
  if (!labels.empty() && labels.size() != n) {
    throw std::invalid_argument("label count does not match vertex count");
  }

  CanonicalizationStats local;
  std::vector<WeightedEdge> directed;
  directed.reserve(2 * edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + " " +
                                  std::to_string(e.v));
    }
    const double w = weighted ? e.w : 1.0;
    if (!std::isfinite(w) || w <= 0.0) {
      throw std::invalid_argument("non-positive weight " + std::to_string(e.w));
    }
    if (e.u == e.v) {
      ++local.self_loops_dropped;
      continue;
    }
    directed.push_back({e.u, e.v, w});
    directed.push_back({e.v, e.u, w});
  }

  std::sort(directed.begin(), directed.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.neighbors_.reserve(directed.size());
  if (weighted) g.weights_.reserve(directed.size());

  std::size_t merged_directed = 0;
  for (std::size_t i = 0; i < directed.size();) {
    const auto [u, v, w0] = directed[i];
    double w = w0;
    std::size_t j = i + 1;
    for (; j < directed.size() && directed[j].u == u && directed[j].v == v; ++j) {
      if (weighted) w += directed[j].w;
      ++merged_directed;
    }
    g.neighbors_.push_back(v);
    if (weighted) g.weights_.push_back(w);
    ++g.offsets_[u + 1];
    i = j;
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  // Summation order differs between (u,v) and (v,u) runs only when the raw
  // weights differ, so recompute the reverse weight from the forward one.
  if (weighted) {
    for (VertexId u = 0; u < n; ++u) {
      for (std::size_t k = g.offsets_[u]; k < g.offsets_[u + 1]; ++k) {
        const VertexId v = g.neighbors_[k];
        if (v >= u) continue;
        const auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        const auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        const auto it = std::lower_bound(first, last, u);
        g.weights_[k] = g.weights_[static_cast<std::size_t>(it - g.neighbors_.begin())];
      }
    }
  }

  local.duplicates_merged = merged_directed / 2;
  g.labels_ = std::move(labels);
  if (stats != nullptr) *stats = local;
  return g;
}

std::vector<WeightedEdge> Graph::edge_list() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_edges());
  const std::size_t n = num_vertices();
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      if (neighbors_[k] > u) out.push_back({u, neighbors_[k], weighted() ? weights_[k] : 1.0});
    }
  }
  return out;
}

ComponentDecomposition connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  constexpr auto unset = static_cast<std::size_t>(-1);

  ComponentDecomposition cc;
  cc.component_id.assign(n, unset);
  std::queue<VertexId> frontier;
  for (VertexId start = 0; start < n; ++start) {
    if (cc.component_id[start] != unset) continue;
    const std::size_t id = cc.sizes.size();
    cc.sizes.push_back(0);
    cc.component_id[start] = id;
    frontier.push(start);
    while (!frontier.empty()) {
      const VertexId v = frontier.front();
      frontier.pop();
      ++cc.sizes[id];
      for (VertexId w : g.neighbors(v)) {
        if (cc.component_id[w] == unset) {
          cc.component_id[w] = id;
          frontier.push(w);
        }
      }
    }
  }
  for (std::size_t c = 1; c < cc.sizes.size(); ++c) {
    if (cc.sizes[c] > cc.sizes[cc.largest]) cc.largest = c;
  }
  return cc;
}

Graph largest_connected_component(const Graph& g) {
  const auto cc = connected_components(g);
  if (cc.count() <= 1) return g;

  const std::size_t n = g.num_vertices();
  constexpr auto absent = static_cast<VertexId>(-1);
  std::vector<VertexId> remap(n, absent);
  std::vector<std::int64_t> labels;
  labels.reserve(cc.sizes[cc.largest]);
  for (VertexId v = 0; v < n; ++v) {
    if (cc.component_id[v] == cc.largest) {
      remap[v] = static_cast<VertexId>(labels.size());
      labels.push_back(g.label(v));
    }
  }

  std::vector<WeightedEdge> edges;
  for (const auto& e : g.edge_list()) {
    if (remap[e.u] != absent) edges.push_back({remap[e.u], remap[e.v], e.w});
  }
  const std::size_t count = labels.size();
  return Graph::from_edges(count, edges, g.weighted(), std::move(labels));
}

Graph permute_vertices(const Graph& g, std::span<const VertexId> perm) {
  const std::size_t n = g.num_vertices();
  if (perm.size() != n) throw std::invalid_argument("permutation length does not match graph");
  std::vector<bool> seen(n, false);
  for (VertexId p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("permutation is not a bijection");
    seen[p] = true;
  }

  std::vector<WeightedEdge> edges = g.edge_list();
  for (auto& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  std::vector<std::int64_t> labels(n);
  for (VertexId v = 0; v < n; ++v) labels[perm[v]] = g.label(v);
  return Graph::from_edges(n, edges, g.weighted(), std::move(labels));
}

}  // namespace spectradim
