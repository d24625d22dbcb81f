#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "spectradim/dimension.hpp"
#include "spectradim/graph_io.hpp"
#include "spectradim/spectrum.hpp"

namespace spectradim::cli {

// Exit codes. Kept in one place because scripts depend on them.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitEstimation = 4;

struct PipelineOptions {
  GraphFormat format = GraphFormat::automatic;
  bool weighted = false;
  EstimateParams params;
};

struct StageTimes {
  double parse = 0.0;
  double solve = 0.0;
  double fit = 0.0;

  double total() const { return parse + solve + fit; }
};

struct GraphSummary {
  std::size_t n = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  std::size_t lcc_n = 0;
  bool weighted = false;
};

struct RunReport {
  std::string input;
  GraphSummary graph;
  std::optional<DimensionEstimate> estimate;
  std::optional<Spectrum> spectrum;  // JSON carries the metadata, not the values
  StageTimes timing;
  std::vector<std::string> warnings;

  // Set when the pipeline stopped early.
  std::string error;
  int exit_code = kExitOk;
};

/// Runs parse -> components -> spectrum -> fit on one file. Never throws for
/// input-dependent failures; they land in `error` and `exit_code`.
RunReport run_pipeline(const std::filesystem::path& path, const PipelineOptions& options);

nlohmann::json to_json(const RunReport& report);

inline constexpr const char* kCsvHeader = "name,n,edges,d_s,slope,r2,solver,ms_total,error";

/// One CSV row for the report. `timing` false leaves ms_total empty so that
/// repeated runs are byte-identical.
std::string csv_row(const std::string& name, const RunReport& report, bool timing);

/// Quotes a field when it holds a comma, quote or newline.
std::string csv_field(const std::string& text);

/// Maps the active exception to an exit code and a one-line message.
int classify_current_exception(std::string& message);

}  // namespace spectradim::cli
