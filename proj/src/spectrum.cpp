#include "spectradim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "spectradim/error.hpp"

namespace spectradim {
namespace {

// Spectrum of the normalized Laplacian lies in [0, 2].
constexpr double kSpectrumUpper = 2.0;

// Largest amplification one filter pass may apply to the bottom of the
// spectrum relative to the top of the kept block. Larger values make the
// block numerically rank deficient after orthonormalization.
constexpr double kMaxPassGrowth = 1e4;
constexpr int kMinDegree = 2;
constexpr int kMaxDegree = 400;
constexpr Eigen::Index kFilterChunk = 64;

Eigen::MatrixXd random_block(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  // Raw mt19937_64 bits rather than a std distribution keep the start block
  // identical across standard library implementations.
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd x(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      x(r, c) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }
  }
  return x;
}

void orthonormalize(Eigen::MatrixXd& x) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(x.rows(), x.cols());
  q.applyOnTheLeft(qr.householderQ());
  x = std::move(q);
}

int filter_degree(double cutoff) {
  // |T_d| at eigenvalue 0 when [cutoff, 2] is mapped onto [-1, 1].
  const double y0 = (kSpectrumUpper + cutoff) / (kSpectrumUpper - cutoff);
  const double rate = std::acosh(y0);
  if (!(rate > 0.0)) return kMaxDegree;
  const double d = std::acosh(kMaxPassGrowth) / rate;
  return static_cast<int>(std::clamp(std::floor(d), double{kMinDegree}, double{kMaxDegree}));
}

// x <- T_d((L - c) / e) x with [cutoff, 2] mapped onto [-1, 1].
void chebyshev_filter(const LaplacianOperator& op, Eigen::MatrixXd& x, int degree, double cutoff) {
  const double half_width = (kSpectrumUpper - cutoff) / 2.0;
  const double center = (kSpectrumUpper + cutoff) / 2.0;
  Eigen::MatrixXd prev, cur, next, lx;
  for (Eigen::Index c0 = 0; c0 < x.cols(); c0 += kFilterChunk) {
    const Eigen::Index width = std::min(kFilterChunk, x.cols() - c0);
    prev = x.middleCols(c0, width);
    op.apply(prev, lx);
    cur = (lx - center * prev) / half_width;
    for (int k = 2; k <= degree; ++k) {
      op.apply(cur, lx);
      next = (2.0 / half_width) * (lx - center * cur) - prev;
      prev.swap(cur);
      cur.swap(next);
    }
    x.middleCols(c0, width) = cur;
  }
}

}  // namespace

const char* to_string(SpectrumKind kind) noexcept {
  return kind == SpectrumKind::full ? "full" : "partial";
}

const char* to_string(SolverKind kind) noexcept {
  return kind == SolverKind::dense ? "dense" : "iterative";
}

void SpectrumConfig::validate() const {
  if (!(target_fraction > 0.0 && target_fraction <= 1.0)) {
    throw std::invalid_argument("target_fraction must lie in (0, 1]");
  }
  if (dense_threshold < 2) throw std::invalid_argument("dense_threshold must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be positive");
}

Spectrum full_spectrum_dense(const Graph& g, std::size_t dense_threshold) {
  const std::size_t n = g.num_vertices();
  if (n > dense_threshold) {
    throw SolverError("graph has " + std::to_string(n) + " vertices, above the dense threshold " +
                      std::to_string(dense_threshold) +
                      "; use the partial (iterative) solver or raise the threshold");
  }
  Spectrum spec;
  spec.n = n;
  spec.kind = SpectrumKind::full;
  spec.solver = SolverKind::dense;
  if (n == 0) return spec;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_laplacian(g, dense_threshold),
                                                           Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw SolverError("dense eigensolver did not converge");
  const auto& ev = eig.eigenvalues();
  spec.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(spec.values.begin(), spec.values.end());
  return spec;
}

Spectrum partial_spectrum_iterative(const Graph& g, std::size_t m, const SpectrumConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.num_vertices();
  if (m < 1 || m >= n) {
    throw SolverError("partial solve needs 1 <= m < n (m = " + std::to_string(m) +
                      ", n = " + std::to_string(n) + ")");
  }

  const LaplacianOperator op(g);
  const std::size_t guard = std::max<std::size_t>(16, m / 2);
  const auto block = static_cast<Eigen::Index>(std::min(n, m + guard));
  const auto wanted = static_cast<Eigen::Index>(m);

  Eigen::MatrixXd x = random_block(static_cast<Eigen::Index>(n), block, cfg.seed);
  orthonormalize(x);

  Eigen::MatrixXd lx;
  Eigen::VectorXd ritz;
  double worst = 0.0;
  Eigen::Index converged = 0;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    op.apply(x, lx);
    Eigen::MatrixXd h = x.transpose() * lx;
    h = (0.5 * (h + h.transpose())).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(h);
    if (rr.info() != Eigen::Success) throw SolverError("Rayleigh-Ritz eigensolve failed");
    ritz = rr.eigenvalues();
    x = (x * rr.eigenvectors()).eval();
    lx = (lx * rr.eigenvectors()).eval();

    worst = 0.0;
    converged = 0;
    bool leading = true;
    for (Eigen::Index i = 0; i < wanted; ++i) {
      const double r = (lx.col(i) - ritz(i) * x.col(i)).norm();
      worst = std::max(worst, r);
      if (leading && r <= cfg.tol) {
        ++converged;
      } else {
        leading = false;
      }
    }
    if (worst <= cfg.tol) {
      Spectrum spec;
      spec.values.assign(ritz.data(), ritz.data() + wanted);
      spec.n = n;
      spec.kind = SpectrumKind::partial;
      spec.solver = SolverKind::iterative;
      spec.residual_bound = worst;
      spec.seed = cfg.seed;
      return spec;
    }

    const double cutoff = ritz(block - 1);
    if (cutoff >= kSpectrumUpper) continue;  // block already spans the whole range
    chebyshev_filter(op, x, filter_degree(cutoff), cutoff);
    orthonormalize(x);
  }

  throw ConvergenceError("iterative solver did not reach tol " + std::to_string(cfg.tol) + " in " +
                             std::to_string(cfg.max_iter) + " passes (" + std::to_string(converged) +
                             "/" + std::to_string(m) + " converged, worst residual " +
                             std::to_string(worst) + ")",
                         cfg.max_iter, static_cast<std::size_t>(converged), worst);
}

std::size_t partial_size(std::size_t n, const SpectrumConfig& cfg) {
  const auto target = static_cast<std::size_t>(std::ceil(cfg.target_fraction * static_cast<double>(n)));
  const std::size_t m = std::max(cfg.min_partial, target);
  return n == 0 ? 0 : std::min(m, n - 1);
}

Spectrum compute_spectrum(const Graph& g, const SpectrumConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.num_vertices();
  if (n <= cfg.dense_threshold) return full_spectrum_dense(g, cfg.dense_threshold);
  return partial_spectrum_iterative(g, partial_size(n, cfg), cfg);
}

}  // namespace spectradim
