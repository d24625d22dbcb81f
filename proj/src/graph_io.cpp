#include "spectradim/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spectradim/error.hpp"

namespace spectradim {
namespace {

constexpr std::string_view kCanonicalTag = "% spectradim canonical";

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::int64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("non-numeric vertex id '" + std::string(tok) + "'", line_no);
  }
  if (value < 0) throw ParseError("negative vertex id " + std::string(tok), line_no);
  return value;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
  // std::from_chars for double is missing from older libstdc++.
  const std::string s(tok);
  char* end = nullptr;
  const double w = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) {
    throw ParseError("non-numeric weight '" + s + "'", line_no);
  }
  if (!std::isfinite(w) || w <= 0.0) throw ParseError("non-positive weight " + s, line_no);
  return w;
}

bool is_comment(std::string_view line) {
  const auto tokens = split_ws(line);
  return tokens.empty() || tokens.front().front() == '#' || tokens.front().front() == '%';
}

// Parses "% spectradim canonical n=<n> weighted=<0|1>".
bool parse_canonical_directive(std::string_view line, std::size_t& n, bool& weighted) {
  if (line.substr(0, kCanonicalTag.size()) != kCanonicalTag) return false;
  const auto tokens = split_ws(line.substr(kCanonicalTag.size()));
  bool have_n = false;
  for (auto tok : tokens) {
    if (tok.starts_with("n=")) {
      const auto [ptr, ec] = std::from_chars(tok.data() + 2, tok.data() + tok.size(), n);
      have_n = ec == std::errc{} && ptr == tok.data() + tok.size();
    } else if (tok == "weighted=1") {
      weighted = true;
    } else if (tok == "weighted=0") {
      weighted = false;
    }
  }
  return have_n;
}

}  // namespace

ParseResult parse_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::unordered_map<std::int64_t, VertexId> index;
  std::vector<std::int64_t> labels;
  std::vector<WeightedEdge> edges;

  std::size_t canonical_n = 0;
  bool canonical = false;
  bool canonical_weighted = false;
  std::int64_t min_id = -1;

  const auto intern = [&](std::int64_t id) -> VertexId {
    if (canonical) return static_cast<VertexId>(id);
    const auto [it, inserted] = index.try_emplace(id, static_cast<VertexId>(labels.size()));
    if (inserted) labels.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!canonical && edges.empty() && labels.empty() &&
        parse_canonical_directive(line, canonical_n, canonical_weighted)) {
      canonical = true;
      continue;
    }
    if (is_comment(line)) continue;

    const auto tokens = split_ws(line);
    if (tokens.size() < 2) throw ParseError("expected at least two fields", line_no);
    const std::int64_t a = parse_id(tokens[0], line_no);
    const std::int64_t b = parse_id(tokens[1], line_no);
    const std::int64_t lo = std::min(a, b);
    if (options.base == IndexBase::one && lo < 1) {
      throw ParseError("vertex id 0 in a 1-indexed file", line_no);
    }
    if (canonical && static_cast<std::uint64_t>(std::max(a, b)) >= canonical_n) {
      throw ParseError("vertex id exceeds declared n", line_no);
    }
    min_id = min_id < 0 ? lo : std::min(min_id, lo);

    double w = 1.0;
    const bool weighted = options.weighted || (canonical && canonical_weighted);
    if (weighted && tokens.size() >= 3) w = parse_weight(tokens[2], line_no);
    const VertexId u = intern(a);
    const VertexId v = intern(b);
    edges.push_back({u, v, w});
  }

  const std::size_t n = canonical ? canonical_n : labels.size();
  if (n == 0) throw ParseError("empty graph");

  // Labels are reported 0-based: automatic detection treats a file whose
  // smallest id is >= 1 as 1-indexed.
  if (!canonical) {
    const bool one_based = options.base == IndexBase::one ||
                           (options.base == IndexBase::automatic && min_id >= 1);
    if (one_based) {
      for (auto& label : labels) --label;
    }
  }

  ParseResult result;
  const bool weighted = options.weighted || (canonical && canonical_weighted);
  result.graph = Graph::from_edges(n, edges, weighted, canonical ? std::vector<std::int64_t>{}
                                                                  : std::move(labels),
                                   &result.stats);
  return result;
}

ParseResult parse_matrix_market(std::istream& in, bool weighted) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty graph");
  ++line_no;

  std::string lowered = line;
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto header = split_ws(lowered);
  if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix") {
    throw UnsupportedFormat("missing or malformed %%MatrixMarket header");
  }
  if (header[2] != "coordinate") {
    throw UnsupportedFormat("unsupported Matrix Market layout '" + std::string(header[2]) + "'");
  }
  const std::string_view field = header[3];
  if (field != "pattern" && field != "real" && field != "integer") {
    throw UnsupportedFormat("unsupported Matrix Market field '" + std::string(field) + "'");
  }
  const std::string_view symmetry = header[4];
  if (symmetry != "symmetric" && symmetry != "general") {
    throw UnsupportedFormat("unsupported Matrix Market symmetry '" + std::string(symmetry) + "'");
  }
  const bool has_values = field != "pattern";

  std::int64_t rows = -1;
  std::int64_t cols = -1;
  std::int64_t nnz = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 3) throw ParseError("size line must have three fields", line_no);
    rows = parse_id(tokens[0], line_no);
    cols = parse_id(tokens[1], line_no);
    nnz = parse_id(tokens[2], line_no);
    break;
  }
  if (rows < 0) throw ParseError("missing size line", line_no);
  if (rows != cols) throw ParseError("adjacency matrix must be square", line_no);
  if (rows == 0) throw ParseError("empty graph", line_no);

  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(nnz));
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() < (has_values ? 3u : 2u)) throw ParseError("too few fields in entry", line_no);
    const std::int64_t i = parse_id(tokens[0], line_no);
    const std::int64_t j = parse_id(tokens[1], line_no);
    if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError("entry index out of range", line_no);
    double w = 1.0;
    if (has_values) {
      const double value = parse_weight(tokens[2], line_no);
      if (weighted) w = value;
    }
    if (static_cast<std::int64_t>(edges.size()) == nnz) {
      throw ParseError("more entries than declared on the size line", line_no);
    }
    edges.push_back({static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1), w});
  }
  if (static_cast<std::int64_t>(edges.size()) != nnz) {
    throw ParseError("size line declares " + std::to_string(nnz) + " entries, found " +
                     std::to_string(edges.size()));
  }

  ParseResult result;
  result.graph = Graph::from_edges(static_cast<std::size_t>(rows), edges, weighted && has_values, {},
                                   &result.stats);
  return result;
}

void write_canonical(std::ostream& out, const Graph& g) {
  out << kCanonicalTag << " n=" << g.num_vertices() << " weighted=" << (g.weighted() ? 1 : 0)
      << '\n';
  char buf[64];
  for (const auto& e : g.edge_list()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.w);
    out << e.u << ' ' << e.v << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf))
        << '\n';
  }
}

std::string to_canonical_string(const Graph& g) {
  std::ostringstream out;
  write_canonical(out, g);
  return out.str();
}

ParseResult read_graph_file(const std::filesystem::path& path, GraphFormat format, bool weighted) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  if (format == GraphFormat::automatic) {
    if (path.extension() == ".mtx") {
      format = GraphFormat::matrix_market;
    } else {
      std::string first;
      std::getline(in, first);
      format = first.starts_with("%%MatrixMarket") ? GraphFormat::matrix_market
                                                     : GraphFormat::edge_list;
      in.clear();
      in.seekg(0);
    }
  }
  if (format == GraphFormat::matrix_market) return parse_matrix_market(in, weighted);
  return parse_edge_list(in, {IndexBase::automatic, weighted});
}

}  // namespace spectradim
