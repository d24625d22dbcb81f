#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace spectradim {

/// Complexity scores paired with an external metric, one record per graph.
struct PairedSeries {
  std::vector<std::string> names;
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const noexcept { return xs.size(); }
};

struct PairedLoad {
  PairedSeries series;
  std::size_t dropped = 0;  // rows with missing or non-finite values
};

/// CSV with a header naming at least "name", "complexity" and "metric"
/// (any order, extra columns ignored, double-quoted fields allowed). Throws
/// ParseError when a required column is missing.
PairedLoad read_paired_csv(std::istream& in);

/// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& values);

/// Pearson correlation of the average-rank vectors. Throws std::domain_error
/// when either series is constant and std::invalid_argument when N < 2 or
/// the lengths differ.
double spearman(const PairedSeries& series);

inline constexpr const char* kMutualInformationUnits = "nats";

/// floor(sqrt(N)), at least 2.
std::size_t default_bins(std::size_t n);

/// Plug-in mutual information (nats) of the 2-D histogram with
/// equal-frequency marginal bins, `bins` per axis. Bins are assigned from
/// average ranks, so tied values always land in the same bin. Throws
/// std::invalid_argument unless 2 <= bins <= N.
double mutual_information(const PairedSeries& series, std::size_t bins);

}  // namespace spectradim
