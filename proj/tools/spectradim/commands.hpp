#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "run_report.hpp"

namespace spectradim::cli {

enum class OutputFormat { json, csv, txt };

struct EstimateCommand {
  std::string input;
  PipelineOptions pipeline;
  OutputFormat output = OutputFormat::json;
};

struct SpectrumCommand {
  std::string input;
  GraphFormat format = GraphFormat::automatic;
  bool weighted = false;
  bool full = false;
  std::optional<std::size_t> smallest;
  SpectrumConfig config;
  OutputFormat output = OutputFormat::json;
};

inline constexpr std::size_t kOracleDefaultLimit = 8192;

struct OracleCommand {
  std::string input;
  PipelineOptions pipeline;
  std::size_t points = 64;
  std::optional<std::size_t> limit;  // --dense-threshold
};

struct GenCommand {
  std::string kind;
  std::vector<std::size_t> params;
  bool periodic = false;
  std::string out;
};

struct BatchCommand {
  std::string source;
  PipelineOptions pipeline;
  std::size_t jobs = 0;  // 0: hardware concurrency
  bool timing = true;
};

struct CorrelateCommand {
  std::string input;
  std::optional<std::size_t> bins;
};

// Each returns the process exit code. Machine-readable output goes to `out`,
// diagnostics to `err`.
int run_estimate(const EstimateCommand& cmd, std::ostream& out, std::ostream& err);
int run_spectrum(const SpectrumCommand& cmd, std::ostream& out, std::ostream& err);
int run_oracle(const OracleCommand& cmd, std::ostream& out, std::ostream& err);
int run_gen(const GenCommand& cmd, std::ostream& out, std::ostream& err);
int run_batch(const BatchCommand& cmd, std::ostream& out, std::ostream& err);
int run_correlate(const CorrelateCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace spectradim::cli
