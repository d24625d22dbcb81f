#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "spectradim/graph.hpp"
#include "spectradim/laplacian.hpp"

namespace spectradim {

enum class SpectrumKind { full, partial };
enum class SolverKind { dense, iterative };

const char* to_string(SpectrumKind kind) noexcept;
const char* to_string(SolverKind kind) noexcept;

/// Eigenvalues of the normalized Laplacian, ascending. A partial spectrum
/// holds the m smallest.
struct Spectrum {
  std::vector<double> values;
  std::size_t n = 0;
  SpectrumKind kind = SpectrumKind::full;
  SolverKind solver = SolverKind::dense;
  std::optional<double> residual_bound;  // iterative only
  std::optional<std::uint64_t> seed;     // iterative only

  std::size_t m() const noexcept { return values.size(); }
};

struct SpectrumConfig {
  std::size_t dense_threshold = kDefaultDenseThreshold;
  double target_fraction = 0.02;
  std::size_t min_partial = 64;
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// All n eigenvalues from a dense symmetric eigensolve. Throws SolverError
/// above `dense_threshold`.
Spectrum full_spectrum_dense(const Graph& g, std::size_t dense_threshold = kDefaultDenseThreshold);

/// The m smallest eigenvalues, 1 <= m < n, each with Ritz residual
/// ||L v - lambda v|| <= cfg.tol. Deterministic for a given cfg.seed.
///
/// Chebyshev-filtered subspace iteration: a block of m plus a guard band is
/// repeatedly multiplied by a Chebyshev polynomial in L that damps [a, 2],
/// where a is the largest current Ritz value, and then Rayleigh-Ritz
/// projected. A block method recovers the full multiplicity of degenerate
/// eigenvalues, which single-vector Krylov methods cannot.
///
/// Throws SolverError when m is out of range and ConvergenceError when
/// cfg.max_iter filter passes are not enough.
Spectrum partial_spectrum_iterative(const Graph& g, std::size_t m, const SpectrumConfig& cfg = {});

/// Size of the partial solve used by compute_spectrum above the dense threshold.
std::size_t partial_size(std::size_t n, const SpectrumConfig& cfg);

/// Dense when n <= cfg.dense_threshold, otherwise the partial_size(n) smallest.
Spectrum compute_spectrum(const Graph& g, const SpectrumConfig& cfg = {});

}  // namespace spectradim
