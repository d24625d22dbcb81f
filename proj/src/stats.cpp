#include "spectradim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "spectradim/error.hpp"

namespace spectradim {
namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_finite(const std::string& field) {
  const std::string s = trim(field);
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

void check_series(const PairedSeries& series) {
  if (series.xs.size() != series.ys.size()) throw std::invalid_argument("series lengths differ");
  if (series.size() < 2) throw std::invalid_argument("need at least two records");
}

}  // namespace

PairedLoad read_paired_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  const auto header = split_csv_row(line);
  const auto column = [&](const char* name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw ParseError(std::string("CSV header lacks column '") + name + "'", 1);
  };
  const std::size_t name_col = column("name");
  const std::size_t x_col = column("complexity");
  const std::size_t y_col = column("metric");
  const std::size_t needed = std::max({name_col, x_col, y_col}) + 1;

  PairedLoad load;
  while (std::getline(in, line)) {
    if (trim(line).empty() || trim(line) == "\r") continue;
    const auto fields = split_csv_row(line);
    if (fields.size() < needed) {
      ++load.dropped;
      continue;
    }
    const auto x = parse_finite(fields[x_col]);
    const auto y = parse_finite(fields[y_col]);
    if (!x || !y) {
      ++load.dropped;
      continue;
    }
    load.series.names.push_back(trim(fields[name_col]));
    load.series.xs.push_back(*x);
    load.series.ys.push_back(*y);
  }
  return load;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold equal values; 1-based ranks i+1..j.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(const PairedSeries& series) {
  check_series(series);
  const auto rx = average_ranks(series.xs);
  const auto ry = average_ranks(series.ys);
  const auto count = static_cast<double>(rx.size());
  const double mean = (count + 1.0) / 2.0;  // mean of average ranks is exact
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::domain_error("Spearman correlation undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::size_t default_bins(std::size_t n) {
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))));
}

double mutual_information(const PairedSeries& series, std::size_t bins) {
  check_series(series);
  const std::size_t n = series.size();
  if (bins < 2) throw std::invalid_argument("mutual information needs at least 2 bins");
  if (bins > n) throw std::invalid_argument("more bins than records");

  const auto to_bins = [&](const std::vector<double>& values) {
    const auto ranks = average_ranks(values);
    std::vector<std::size_t> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto raw = static_cast<std::size_t>(
          std::floor((ranks[i] - 1.0) * static_cast<double>(bins) / static_cast<double>(n)));
      b[i] = std::min(raw, bins - 1);
    }
    return b;
  };
  const auto bx = to_bins(series.xs);
  const auto by = to_bins(series.ys);

  std::vector<double> joint(bins * bins, 0.0);
  std::vector<double> px(bins, 0.0);
  std::vector<double> py(bins, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    joint[bx[i] * bins + by[i]] += 1.0;
    px[bx[i]] += 1.0;
    py[by[i]] += 1.0;
  }

  const auto total = static_cast<double>(n);
  double mi = 0.0;
  for (std::size_t a = 0; a < bins; ++a) {
    for (std::size_t b = 0; b < bins; ++b) {
      const double c = joint[a * bins + b];
      if (c == 0.0) continue;
      mi += (c / total) * std::log(c * total / (px[a] * py[b]));
    }
  }
  return std::max(0.0, mi);
}

}  // namespace spectradim
