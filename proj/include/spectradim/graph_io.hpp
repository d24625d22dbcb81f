#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "spectradim/graph.hpp"

namespace spectradim {

enum class IndexBase { automatic, zero, one };

struct EdgeListOptions {
  IndexBase base = IndexBase::automatic;
  bool weighted = false;
};

struct ParseResult {
  Graph graph;
  CanonicalizationStats stats;
};

/// Reads whitespace-separated "u v [w]" lines. Lines starting with '#' or '%'
/// are comments, except for the directive written by write_canonical, which
/// pins n and takes ids verbatim. Otherwise vertex ids are compacted to
/// 0..n-1 in order of first appearance and the original ids are kept as labels.
///
/// Labels are stored 0-based: with IndexBase::automatic a file whose smallest
/// id is at least 1 is taken to be 1-indexed. An explicit one-based file
/// containing id 0 is a parse error.
ParseResult parse_edge_list(std::istream& in, const EdgeListOptions& options = {});

/// Coordinate Matrix Market, pattern/real/integer, symmetric/general. Vertex
/// count comes from the size line. Real values become weights only when
/// `weighted` is set; they must be positive either way.
ParseResult parse_matrix_market(std::istream& in, bool weighted = false);

/// Sorted "u v w" lines (u < v, 0-indexed) preceded by a canonical directive,
/// so that parse_edge_list reproduces the graph exactly.
void write_canonical(std::ostream& out, const Graph& g);
std::string to_canonical_string(const Graph& g);

enum class GraphFormat { automatic, edge_list, matrix_market };

/// Picks the parser from the extension (.mtx), falling back to sniffing the
/// "%%MatrixMarket" banner. Throws ParseError when the file cannot be opened.
ParseResult read_graph_file(const std::filesystem::path& path, GraphFormat format = GraphFormat::automatic,
                            bool weighted = false);

}  // namespace spectradim
