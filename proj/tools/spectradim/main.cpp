// spectradim: spectral dimension of graphs from the command line.
//
// Exit codes: 0 ok, 2 bad input or usage, 3 solver failure or size guard,
// 4 estimation failure. stdout carries only JSON/CSV/text results.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "commands.hpp"

namespace {

using namespace spectradim;
using namespace spectradim::cli;

const std::map<std::string, GraphFormat> kFormats{
    {"auto", GraphFormat::automatic}, {"edgelist", GraphFormat::edge_list}, {"mtx", GraphFormat::matrix_market}};

struct SharedFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> dense_threshold;
  bool keep_disconnected = false;
};

void add_graph_flags(CLI::App& cmd, GraphFormat& format, bool& weighted) {
  cmd.add_option("--format", format, "Input format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->default_str("auto");
  cmd.add_flag("--weighted", weighted, "Read a third column (or Matrix Market values) as edge weights");
}

void add_pipeline_flags(CLI::App& cmd, PipelineOptions& opts, SharedFlags& shared) {
  add_graph_flags(cmd, opts.format, opts.weighted);
  cmd.add_option("--M", opts.params.M, "Interpolation grid size")
      ->check(CLI::Range(std::size_t{16}, std::size_t{1} << 24))
      ->capture_default_str();
  cmd.add_option("--s", opts.params.s, "Cutoff fraction of the spectrum used by the fit")
      ->check(CLI::Range(1e-9, 0.999999))
      ->capture_default_str();
  cmd.add_option("--dense-threshold", shared.dense_threshold,
                 "Largest n solved densely (default 3000)");
  cmd.add_option("--seed", shared.seed, "Seed for the iterative solver (falls back to SPECTRADIM_SEED)");
  cmd.add_flag("--keep-disconnected", shared.keep_disconnected,
               "Estimate on the whole graph instead of its largest component");
}

// Applies --seed, SPECTRADIM_SEED and --dense-threshold. Returns false on a
// malformed environment seed.
bool resolve_shared(const SharedFlags& shared, SpectrumConfig& cfg, std::ostream& err) {
  if (shared.seed) {
    cfg.seed = *shared.seed;
  } else if (const char* env = std::getenv("SPECTRADIM_SEED"); env != nullptr && *env != '\0') {
    const std::string text(env);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      err << "spectradim: SPECTRADIM_SEED is not an unsigned integer: '" << text << "'\n";
      return false;
    }
    cfg.seed = value;
  }
  if (shared.dense_threshold) cfg.dense_threshold = *shared.dense_threshold;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral dimension of graphs from the normalized Laplacian spectrum", "spectradim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "spectradim 0.1.0");

  // estimate
  EstimateCommand estimate;
  SharedFlags estimate_shared;
  std::string estimate_output = "json";
  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate d_s for one graph and print a run report");
  estimate_cmd->add_option("input", estimate.input, "Edge list or Matrix Market file")->required();
  add_pipeline_flags(*estimate_cmd, estimate.pipeline, estimate_shared);
  estimate_cmd->add_option("--output", estimate_output)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  // spectrum
  SpectrumCommand spectrum;
  SharedFlags spectrum_shared;
  std::string spectrum_output = "json";
  std::size_t smallest = 0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dump normalized-Laplacian eigenvalues");
  spectrum_cmd->add_option("input", spectrum.input)->required();
  add_graph_flags(*spectrum_cmd, spectrum.format, spectrum.weighted);
  auto* full_flag = spectrum_cmd->add_flag("--full", spectrum.full, "Every eigenvalue (dense solve)");
  auto* smallest_opt = spectrum_cmd->add_option("--smallest", smallest, "The m smallest eigenvalues (iterative)");
  full_flag->excludes(smallest_opt);
  spectrum_cmd->add_option("--dense-threshold", spectrum_shared.dense_threshold);
  spectrum_cmd->add_option("--seed", spectrum_shared.seed);
  spectrum_cmd->add_option("--output", spectrum_output)->check(CLI::IsMember({"json", "txt"}))->capture_default_str();

  // oracle
  OracleCommand oracle;
  SharedFlags oracle_shared;
  auto* oracle_cmd = app.add_subcommand("oracle", "Heat-kernel return probability next to the Weyl-route d_s");
  oracle_cmd->add_option("input", oracle.input)->required();
  add_pipeline_flags(*oracle_cmd, oracle.pipeline, oracle_shared);
  oracle_cmd->add_option("--points", oracle.points, "Number of log-spaced times")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  std::string oracle_output = "json";
  oracle_cmd->add_option("--output", oracle_output)->check(CLI::IsMember({"json"}))->capture_default_str();

  // gen
  GenCommand gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a fixture graph (lattice, cycle, complete)");
  gen_cmd->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"lattice", "cycle", "complete"}));
  gen_cmd->add_option("sizes", gen.params, "Axis lengths, or the vertex count")->required();
  gen_cmd->add_flag("--periodic", gen.periodic, "Wrap every lattice axis");
  gen_cmd->add_option("--out", gen.out, "Output path (default: stdout)");

  // batch
  BatchCommand batch;
  SharedFlags batch_shared;
  bool no_timing = false;
  std::string batch_output = "csv";
  auto* batch_cmd = app.add_subcommand("batch", "Estimate every graph in a directory or manifest, CSV out");
  batch_cmd->add_option("source", batch.source, "Directory, or file listing one graph path per line")->required();
  add_pipeline_flags(*batch_cmd, batch.pipeline, batch_shared);
  batch_cmd->add_option("--jobs,-j", batch.jobs, "Worker threads (default: hardware concurrency)");
  batch_cmd->add_flag("--no-timing", no_timing, "Leave ms_total empty so output is byte-reproducible");
  batch_cmd->add_option("--output", batch_output)->check(CLI::IsMember({"csv"}))->capture_default_str();

  // correlate
  CorrelateCommand correlate;
  std::size_t bins = 0;
  auto* correlate_cmd = app.add_subcommand("correlate", "Spearman and mutual information of name,complexity,metric CSV");
  correlate_cmd->add_option("input", correlate.input)->required();
  auto* bins_opt = correlate_cmd->add_option("--bins", bins, "Quantile bins per axis (default floor(sqrt N))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return kExitInput;
  }

  std::ostream& out = std::cout;
  std::ostream& err = std::cerr;

  if (*estimate_cmd) {
    if (!resolve_shared(estimate_shared, estimate.pipeline.params.spectrum, err)) return kExitInput;
    estimate.pipeline.params.use_lcc = !estimate_shared.keep_disconnected;
    estimate.output = estimate_output == "csv" ? OutputFormat::csv : OutputFormat::json;
    return run_estimate(estimate, out, err);
  }
  if (*spectrum_cmd) {
    if (!resolve_shared(spectrum_shared, spectrum.config, err)) return kExitInput;
    if (*smallest_opt) spectrum.smallest = smallest;
    spectrum.output = spectrum_output == "txt" ? OutputFormat::txt : OutputFormat::json;
    return run_spectrum(spectrum, out, err);
  }
  if (*oracle_cmd) {
    if (!resolve_shared(oracle_shared, oracle.pipeline.params.spectrum, err)) return kExitInput;
    oracle.pipeline.params.use_lcc = !oracle_shared.keep_disconnected;
    oracle.limit = oracle_shared.dense_threshold;
    return run_oracle(oracle, out, err);
  }
  if (*gen_cmd) return run_gen(gen, out, err);
  if (*batch_cmd) {
    if (!resolve_shared(batch_shared, batch.pipeline.params.spectrum, err)) return kExitInput;
    batch.pipeline.params.use_lcc = !batch_shared.keep_disconnected;
    batch.timing = !no_timing;
    return run_batch(batch, out, err);
  }
  if (*correlate_cmd) {
    if (*bins_opt) correlate.bins = bins;
    return run_correlate(correlate, out, err);
  }
  return kExitInput;
}
