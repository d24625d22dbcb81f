#include "spectradim/generators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace spectradim {

Graph generate_lattice(std::span<const std::size_t> dims, bool periodic) {
  if (dims.empty() || dims.size() > 4) throw std::invalid_argument("lattice needs 1 to 4 axes");
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("lattice axis length must be positive");
    if (periodic && d < 3) {
      throw std::invalid_argument("periodic axis of length " + std::to_string(d) +
                                  " would create duplicate edges (need >= 3)");
    }
    n *= d;
  }

  // stride[a] = product of the axis lengths after a.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t a = dims.size() - 1; a > 0; --a) stride[a - 1] = stride[a] * dims[a];

  std::vector<WeightedEdge> edges;
  edges.reserve(n * dims.size());
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < dims.size(); ++a) {
      const std::size_t coord = (v / stride[a]) % dims[a];
      if (coord + 1 < dims[a]) {
        edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>(v + stride[a]), 1.0});
      } else if (periodic) {
        edges.push_back({static_cast<VertexId>(v), static_cast<VertexId>(v - coord * stride[a]), 1.0});
      }
    }
  }
  return Graph::from_edges(n, edges, false);
}

Graph generate_cycle(std::size_t n) {
  const std::size_t dims[] = {n};
  return generate_lattice(dims, true);
}

Graph generate_complete(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete graph needs n >= 2");
  std::vector<WeightedEdge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0});
    }
  }
  return Graph::from_edges(n, edges, false);
}

std::optional<double> lattice_ground_truth(std::span<const std::size_t> dims, bool periodic) {
  if (!periodic || dims.empty()) return std::nullopt;
  return static_cast<double>(dims.size());
}

}  // namespace spectradim
