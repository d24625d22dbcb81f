#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "spectradim/graph.hpp"
#include "spectradim/spectrum.hpp"

namespace spectradim {

inline constexpr std::size_t kDefaultGridSize = 8192;
inline constexpr std::size_t kMinGridSize = 16;
inline constexpr double kDefaultCutoff = 0.01;

/// Eigenvalues at or below this are read as exact zeros by the interpolator.
inline constexpr double kKnotZero = 1e-9;
/// Significand bits kept per knot.
inline constexpr int kKnotBits = 24;

/// Rounds an eigenvalue onto a coarse relative grid (kKnotBits significand
/// bits, round-to-nearest), snapping values <= kKnotZero to 0. Solver noise
/// from a vertex relabelling is ~1e-15, far below the 6e-8 spacing, so
/// relabelled graphs feed bitwise-identical knots to the fit.
double canonical_knot(double lambda) noexcept;

/// Sorted spectrum resampled on the fixed grid x_j = j / M, j = 1..M.
///
/// The spectrum is read as a piecewise-linear function through the knots
/// (k / n, canonical_knot(lambda_k)), k = 1..n, clamped to lambda_1 left of 1 / n. For a
/// partial spectrum the grid stops at the last x_j <= m / n; `values` then
/// holds fewer than M samples.
struct InterpolatedSpectrum {
  std::vector<double> values;
  std::size_t M = 0;
  std::size_t n = 0;
  SpectrumKind source_kind = SpectrumKind::full;
  SolverKind solver = SolverKind::dense;

  /// x_j for the 1-based grid index j.
  double x(std::size_t j) const noexcept { return static_cast<double>(j) / static_cast<double>(M); }
  std::size_t covered() const noexcept { return values.size(); }
  std::vector<double> grid() const;
};

/// Throws std::invalid_argument for M < 16 or an empty spectrum.
InterpolatedSpectrum interpolate_spectrum(const Spectrum& spec, std::size_t M = kDefaultGridSize);

struct FitOptions {
  std::size_t min_fit_points = 5;
  double eps_zero = 1e-9;
  double slope_floor = 1e-6;
};

struct DimensionEstimate {
  /// +infinity when the window is flat (slope <= slope_floor).
  double d_s = std::numeric_limits<double>::infinity();
  double slope = 0.0;
  double r_squared = 0.0;
  std::size_t points_used = 0;
  double s = kDefaultCutoff;
  double lambda_s = 0.0;
  std::size_t M = 0;
  std::size_t n = 0;
  SolverKind solver = SolverKind::dense;

  bool infinite() const noexcept { return d_s == std::numeric_limits<double>::infinity(); }
};

/// Least-squares slope of log(lambda~_j) against log(x_j) over grid points
/// with x_j <= s and lambda~_j <= lambda(s); points at or below eps_zero are
/// left out of the log fit. d_s = 2 / slope.
///
/// A window that holds one repeated value at or below eps_zero (every x_j
/// below 1/n, as on small complete graphs) is flat: slope 0 and d_s infinite. Throws EstimationError (insufficient_low_spectrum) when
/// fewer than min_fit_points are available, and (non_monotone_fit) when the
/// slope is below -slope_floor. Throws std::invalid_argument when s is not
/// in (0, 1) or the samples do not reach x = s.
DimensionEstimate estimate_dimension(const InterpolatedSpectrum& interp, double s = kDefaultCutoff,
                                     const FitOptions& options = {});

/// Average heat-kernel return probability pi(t) = (1/n) sum_k exp(-lambda_k t).
struct ReturnProbabilityCurve {
  std::vector<double> times;
  std::vector<double> probabilities;
  /// -2 x slope of log(pi(t) - z/n) against log t inside fit_window, where z
  /// is the number of zero eigenvalues. Empty when fewer than two times fall
  /// inside the window.
  std::optional<double> fitted_dimension;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Log-spaced times on [1/lambda_max, 1/lambda_2]. Throws
/// std::invalid_argument when the spectrum has no nonzero eigenvalue.
std::vector<double> oracle_times(const Spectrum& spec, std::size_t points = 64,
                                 double eps_zero = FitOptions{}.eps_zero);

/// Needs a full spectrum (throws std::invalid_argument otherwise) and t >= 0.
/// The fit window is [1/lambda_max, 1/lambda_2].
ReturnProbabilityCurve return_probability_curve(const Spectrum& spec, std::span<const double> times,
                                                double eps_zero = FitOptions{}.eps_zero);

struct EstimateParams {
  std::size_t M = kDefaultGridSize;
  double s = kDefaultCutoff;
  SpectrumConfig spectrum;
  FitOptions fit;
  bool use_lcc = true;
};

/// Number of eigenvalues at or below eps_zero among knots k/n <= s. Throws
/// EstimationError (zero_eigenvalue_contamination) when more than one.
void check_zero_contamination(const Spectrum& spec, double s, double eps_zero = FitOptions{}.eps_zero);

/// Solver settings the pipeline actually uses: the partial path is widened
/// to cover twice the cutoff.
SpectrumConfig pipeline_spectrum_config(const EstimateParams& params);

/// LCC (optional) -> spectrum -> interpolation -> fit.
DimensionEstimate estimate_graph_dimension(const Graph& g, const EstimateParams& params = {});

}  // namespace spectradim
