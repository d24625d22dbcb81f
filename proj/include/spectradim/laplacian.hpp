#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spectradim/graph.hpp"

namespace spectradim {

/// Weighted degree per vertex (sum of incident edge weights).
std::vector<double> degrees(const Graph& g);

/// Matrix-free normalized Laplacian I - D^{-1/2} A D^{-1/2}.
///
/// Isolated vertices get D^{-1/2} = 0, so their row is the identity row.
/// The operator keeps a pointer to `g`; the graph must outlive it.
class LaplacianOperator {
public:
  explicit LaplacianOperator(const Graph& g);

  std::size_t size() const noexcept { return inv_sqrt_deg_.size(); }
  const Graph& graph() const noexcept { return *graph_; }
  std::span<const double> inv_sqrt_degrees() const noexcept { return inv_sqrt_deg_; }

  /// out = L x. `x` and `out` must not alias. Throws std::invalid_argument on
  /// a length mismatch.
  void apply(std::span<const double> x, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Column-wise apply: out.col(j) = L x.col(j).
  void apply(const Eigen::MatrixXd& x, Eigen::MatrixXd& out) const;

private:
  const Graph* graph_;
  std::vector<double> inv_sqrt_deg_;
};

/// Default guard for explicit n x n matrices.
inline constexpr std::size_t kDefaultDenseThreshold = 3000;

/// Explicit normalized Laplacian. Refuses (std::length_error) when
/// n > max_n.
Eigen::MatrixXd dense_laplacian(const Graph& g, std::size_t max_n = kDefaultDenseThreshold);

}  // namespace spectradim
