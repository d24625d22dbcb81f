#include "spectradim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spectradim/error.hpp"

namespace spectradim {
namespace {

struct LineFit {
  double slope = 0.0;
  double r_squared = 1.0;
};

LineFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  const auto count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  if (syy > 0.0) {
    const double ss_res = std::max(0.0, syy - fit.slope * sxy);
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace

double canonical_knot(double lambda) noexcept {
  if (!(lambda > kKnotZero)) return 0.0;
  int exponent = 0;
  const double mantissa = std::frexp(lambda, &exponent);
  return std::ldexp(std::round(std::ldexp(mantissa, kKnotBits)), exponent - kKnotBits);
}

std::vector<double> InterpolatedSpectrum::grid() const {
  std::vector<double> xs(covered());
  for (std::size_t j = 1; j <= xs.size(); ++j) xs[j - 1] = x(j);
  return xs;
}

InterpolatedSpectrum interpolate_spectrum(const Spectrum& spec, std::size_t M) {
  if (M < kMinGridSize) {
    throw std::invalid_argument("grid size M = " + std::to_string(M) + " is below " +
                                std::to_string(kMinGridSize));
  }
  if (spec.values.empty()) throw std::invalid_argument("cannot interpolate an empty spectrum");

  std::vector<double> lambda(spec.values.size());
  std::transform(spec.values.begin(), spec.values.end(), lambda.begin(), canonical_knot);
  const std::size_t knots = lambda.size();
  const std::size_t n = spec.n;

  InterpolatedSpectrum out;
  out.M = M;
  out.n = n;
  out.source_kind = spec.kind;
  out.solver = spec.solver;
  out.values.reserve(M);
  // x_j * n = j * n / M = k + r / M exactly in integers.
  for (std::size_t j = 1; j <= M; ++j) {
    const std::size_t scaled = j * n;
    if (scaled > knots * M) break;  // beyond the last computed eigenvalue
    const std::size_t k = scaled / M;
    const std::size_t r = scaled % M;
    double value;
    if (k == 0) {
      value = lambda.front();
    } else if (r == 0) {
      value = lambda[k - 1];
    } else {
      const double lo = lambda[k - 1];
      const double hi = lambda[k];
      const double t = static_cast<double>(r) / static_cast<double>(M);
      value = std::clamp(lo + (hi - lo) * t, lo, hi);
    }
    out.values.push_back(value);
  }
  return out;
}

DimensionEstimate estimate_dimension(const InterpolatedSpectrum& interp, double s,
                                     const FitOptions& options) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("cutoff s must lie in (0, 1)");
  const auto& values = interp.values;
  if (values.empty()) throw std::invalid_argument("interpolated spectrum is empty");

  // Last grid index with x_j <= s.
  std::size_t last = static_cast<std::size_t>(std::floor(s * static_cast<double>(interp.M)));
  while (last + 1 <= interp.M && interp.x(last + 1) <= s) ++last;
  while (last > 0 && interp.x(last) > s) --last;

  const bool on_grid = last > 0 && interp.x(last) == s;
  if (last > interp.covered() || (!on_grid && last + 1 > interp.covered())) {
    throw std::invalid_argument("interpolated spectrum does not reach x = s; compute more eigenvalues");
  }

  double lambda_s;
  if (last == 0) {
    lambda_s = values.front();
  } else if (on_grid) {
    lambda_s = values[last - 1];
  } else {
    const double x0 = interp.x(last);
    const double x1 = interp.x(last + 1);
    const double y0 = values[last - 1];
    const double y1 = values[last];
    lambda_s = std::clamp(y0 + (y1 - y0) * (s - x0) / (x1 - x0), y0, y1);
  }

  std::size_t window = 0;
  double window_min = lambda_s;
  double window_max = 0.0;
  std::vector<double> log_x;
  std::vector<double> log_y;
  for (std::size_t j = 1; j <= last; ++j) {
    const double v = values[j - 1];
    if (v > lambda_s) continue;
    ++window;
    window_min = std::min(window_min, v);
    window_max = std::max(window_max, v);
    if (v > options.eps_zero) {
      log_x.push_back(std::log(interp.x(j)));
      log_y.push_back(std::log(v));
    }
  }

  DimensionEstimate est;
  est.s = s;
  est.lambda_s = lambda_s;
  est.M = interp.M;
  est.n = interp.n;
  est.solver = interp.solver;

  if (window < options.min_fit_points) {
    throw EstimationError(EstimationFailure::insufficient_low_spectrum,
                          "insufficient low spectrum: " + std::to_string(window) +
                              " grid points below s, need " + std::to_string(options.min_fit_points));
  }
  if (log_x.empty() && window_min == window_max) {
    // Every window point is the same zero eigenvalue (x below 1/n): no growth.
    est.slope = 0.0;
    est.r_squared = 1.0;
    est.points_used = window;
    return est;
  }
  if (log_x.size() < options.min_fit_points) {
    throw EstimationError(EstimationFailure::insufficient_low_spectrum,
                          "insufficient low spectrum: " + std::to_string(log_x.size()) +
                              " nonzero grid points below s, need " +
                              std::to_string(options.min_fit_points));
  }

  const LineFit fit = least_squares(log_x, log_y);
  est.slope = fit.slope;
  est.r_squared = fit.r_squared;
  est.points_used = log_x.size();
  if (fit.slope < -options.slope_floor) {
    throw EstimationError(EstimationFailure::non_monotone_fit,
                          "non-monotone fit: slope " + std::to_string(fit.slope));
  }
  if (fit.slope > options.slope_floor) est.d_s = 2.0 / fit.slope;
  return est;
}

std::vector<double> oracle_times(const Spectrum& spec, std::size_t points, double eps_zero) {
  if (points == 0) throw std::invalid_argument("oracle needs at least one time point");
  const auto first_nonzero =
      std::find_if(spec.values.begin(), spec.values.end(), [&](double v) { return v > eps_zero; });
  if (first_nonzero == spec.values.end()) {
    throw std::invalid_argument("spectrum has no nonzero eigenvalue");
  }
  const double t_lo = 1.0 / spec.values.back();
  const double t_hi = 1.0 / *first_nonzero;
  std::vector<double> times(points, t_lo);
  if (points == 1) return times;
  const double log_lo = std::log(t_lo);
  const double step = (std::log(t_hi) - log_lo) / static_cast<double>(points - 1);
  for (std::size_t i = 1; i + 1 < points; ++i) times[i] = std::exp(log_lo + step * static_cast<double>(i));
  times.back() = t_hi;
  return times;
}

ReturnProbabilityCurve return_probability_curve(const Spectrum& spec, std::span<const double> times,
                                                double eps_zero) {
  if (spec.kind != SpectrumKind::full || spec.values.size() != spec.n || spec.n == 0) {
    throw std::invalid_argument("oracle requires full spectrum");
  }
  for (double t : times) {
    if (!(t >= 0.0)) throw std::invalid_argument("oracle times must be nonnegative");
  }

  const auto n = static_cast<double>(spec.n);
  ReturnProbabilityCurve curve;
  curve.times.assign(times.begin(), times.end());
  curve.probabilities.reserve(times.size());

  const auto first_nonzero =
      std::find_if(spec.values.begin(), spec.values.end(), [&](double v) { return v > eps_zero; });
  const auto zeros = static_cast<double>(first_nonzero - spec.values.begin());
  const bool has_gap = first_nonzero != spec.values.end();
  if (has_gap) {
    curve.t_lo = 1.0 / spec.values.back();
    curve.t_hi = 1.0 / *first_nonzero;
  }

  std::vector<double> log_t;
  std::vector<double> log_p;
  for (double t : times) {
    double decaying = 0.0;
    for (auto it = first_nonzero; it != spec.values.end(); ++it) decaying += std::exp(-*it * t);
    decaying /= n;
    curve.probabilities.push_back(zeros / n + decaying);

    // Tolerate the rounding in oracle_times' endpoints.
    const bool inside = has_gap && t > 0.0 && t >= curve.t_lo * (1.0 - 1e-12) &&
                        t <= curve.t_hi * (1.0 + 1e-12);
    if (inside && decaying > 0.0) {
      log_t.push_back(std::log(t));
      log_p.push_back(std::log(decaying));
    }
  }
  const bool spread = !log_t.empty() && log_t.front() != log_t.back();
  if (log_t.size() >= 2 && spread) curve.fitted_dimension = -2.0 * least_squares(log_t, log_p).slope;
  return curve;
}

void check_zero_contamination(const Spectrum& spec, double s, double eps_zero) {
  std::size_t zeros = 0;
  for (std::size_t k = 1; k <= spec.values.size(); ++k) {
    if (static_cast<double>(k) / static_cast<double>(spec.n) > s) break;
    if (spec.values[k - 1] <= eps_zero) ++zeros;
  }
  if (zeros > 1) {
    throw EstimationError(EstimationFailure::zero_eigenvalue_contamination,
                          "zero-eigenvalue contamination: " + std::to_string(zeros) +
                              " zero eigenvalues inside the fit window (graph is disconnected; "
                              "use the largest connected component)");
  }
}

SpectrumConfig pipeline_spectrum_config(const EstimateParams& params) {
  SpectrumConfig cfg = params.spectrum;
  cfg.target_fraction = std::min(1.0, std::max(cfg.target_fraction, 2.0 * params.s));
  return cfg;
}

DimensionEstimate estimate_graph_dimension(const Graph& g, const EstimateParams& params) {
  const SpectrumConfig cfg = pipeline_spectrum_config(params);

  const Graph lcc = params.use_lcc ? largest_connected_component(g) : Graph{};
  const Graph& target = params.use_lcc ? lcc : g;

  const Spectrum spec = compute_spectrum(target, cfg);
  if (!params.use_lcc) check_zero_contamination(spec, params.s, params.fit.eps_zero);
  return estimate_dimension(interpolate_spectrum(spec, params.M), params.s, params.fit);
}

}  // namespace spectradim
