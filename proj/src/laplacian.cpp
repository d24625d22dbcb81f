#include "spectradim/laplacian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spectradim {

std::vector<double> degrees(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<double> d(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    if (g.weighted()) {
      for (double w : g.weights(v)) d[v] += w;
    } else {
      d[v] = static_cast<double>(g.degree(v));
    }
  }
  return d;
}

LaplacianOperator::LaplacianOperator(const Graph& g) : graph_(&g), inv_sqrt_deg_(degrees(g)) {
  for (double& d : inv_sqrt_deg_) d = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
}

void LaplacianOperator::apply(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = size();
  if (x.size() != n || out.size() != n) {
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match operator order " + std::to_string(n));
  }
  const Graph& g = *graph_;
  for (VertexId i = 0; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    const auto ws = g.weights(i);
    double acc = 0.0;
    if (ws.empty()) {
      for (VertexId j : nbrs) acc += inv_sqrt_deg_[j] * x[j];
    } else {
      for (std::size_t k = 0; k < nbrs.size(); ++k) acc += ws[k] * inv_sqrt_deg_[nbrs[k]] * x[nbrs[k]];
    }
    out[i] = x[i] - inv_sqrt_deg_[i] * acc;
  }
}

std::vector<double> LaplacianOperator::apply(std::span<const double> x) const {
  std::vector<double> out(size());
  apply(x, out);
  return out;
}

void LaplacianOperator::apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& out) const {
  const auto n = static_cast<Eigen::Index>(size());
  if (x.rows() != n) throw std::invalid_argument("block row count does not match operator order");
  out.resize(n, x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    apply(std::span<const double>(x.col(c).data(), size()), std::span<double>(out.col(c).data(), size()));
  }
}

Eigen::MatrixXd dense_laplacian(const Graph& g, std::size_t max_n) {
  const std::size_t n = g.num_vertices();
  if (n > max_n) {
    throw std::length_error("refusing dense " + std::to_string(n) + "x" + std::to_string(n) +
                            " Laplacian (limit " + std::to_string(max_n) + ")");
  }
  const LaplacianOperator op(g);
  const auto s = op.inv_sqrt_degrees();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (VertexId i = 0; i < n; ++i) {
    const auto nbrs = g.neighbors(i);
    const auto ws = g.weights(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const double w = ws.empty() ? 1.0 : ws[k];
      lap(i, nbrs[k]) = -w * (s[i] * s[nbrs[k]]);
    }
  }
  return lap;
}

}  // namespace spectradim
