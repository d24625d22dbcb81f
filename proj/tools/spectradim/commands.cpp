#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "spectradim/error.hpp"
#include "spectradim/generators.hpp"
#include "spectradim/graph.hpp"
#include "spectradim/serialization.hpp"
#include "spectradim/stats.hpp"

namespace spectradim::cli {
namespace {

namespace fs = std::filesystem;

int report_failure(std::ostream& err, const std::string& context) {
  std::string message;
  const int code = classify_current_exception(message);
  err << "spectradim " << context << ": " << message << '\n';
  return code;
}

nlohmann::json dimension_json(double d) {
  return std::isinf(d) ? nlohmann::json("inf") : nlohmann::json(d);
}

struct BatchEntry {
  std::string name;
  fs::path path;
};

std::vector<BatchEntry> collect_inputs(const fs::path& source) {
  std::vector<BatchEntry> entries;
  if (fs::is_directory(source)) {
    for (const auto& item : fs::directory_iterator(source)) {
      const std::string name = item.path().filename().string();
      if (name.empty() || name.front() == '.' || !item.is_regular_file()) continue;
      entries.push_back({name, item.path()});
    }
    std::sort(entries.begin(), entries.end(),
              [](const BatchEntry& a, const BatchEntry& b) { return a.name < b.name; });
    return entries;
  }

  std::ifstream manifest(source);
  if (!manifest) throw ParseError("cannot open manifest '" + source.string() + "'");
  const fs::path base = source.parent_path();
  std::string line;
  while (std::getline(manifest, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string name = line.substr(first, last - first + 1);
    const fs::path path(name);
    entries.push_back({name, path.is_absolute() ? path : base / path});
  }
  return entries;
}

}  // namespace

int run_estimate(const EstimateCommand& cmd, std::ostream& out, std::ostream& err) {
  const RunReport report = run_pipeline(cmd.input, cmd.pipeline);
  for (const auto& w : report.warnings) err << "spectradim estimate: warning: " << w << '\n';
  if (report.exit_code != kExitOk) {
    err << "spectradim estimate: " << report.error << '\n';
    return report.exit_code;
  }
  if (cmd.output == OutputFormat::csv) {
    out << kCsvHeader << '\n' << csv_row(fs::path(cmd.input).filename().string(), report, true) << '\n';
  } else {
    out << to_json(report).dump(2) << '\n';
  }
  return kExitOk;
}

int run_spectrum(const SpectrumCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const ParseResult parsed = read_graph_file(cmd.input, cmd.format, cmd.weighted);
    const Graph& g = parsed.graph;
    Spectrum spec;
    if (cmd.smallest) {
      if (*cmd.smallest == 0 || *cmd.smallest >= g.num_vertices()) {
        err << "spectradim spectrum: --smallest must satisfy 1 <= m < n (n = " << g.num_vertices()
            << "); use --full for every eigenvalue\n";
        return kExitInput;
      }
      spec = partial_spectrum_iterative(g, *cmd.smallest, cmd.config);
    } else if (cmd.full) {
      spec = full_spectrum_dense(g, cmd.config.dense_threshold);
    } else {
      spec = compute_spectrum(g, cmd.config);
    }
    if (cmd.output == OutputFormat::txt) {
      write_spectrum_text(out, spec);
    } else {
      out << to_json(spec).dump(2) << '\n';
    }
    return kExitOk;
  } catch (...) {
    return report_failure(err, "spectrum");
  }
}

int run_oracle(const OracleCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    const ParseResult parsed = read_graph_file(cmd.input, cmd.pipeline.format, cmd.pipeline.weighted);
    const auto& params = cmd.pipeline.params;
    const Graph target = params.use_lcc ? largest_connected_component(parsed.graph) : parsed.graph;
    const std::size_t limit = cmd.limit.value_or(kOracleDefaultLimit);
    if (target.num_vertices() > limit) {
      err << "spectradim oracle: graph has " << target.num_vertices()
          << " vertices; the return-probability oracle needs the full spectrum and is limited to " << limit
          << " (raise --dense-threshold to override, at O(n^3) cost)\n";
      return kExitSolver;
    }
    const Spectrum spec = full_spectrum_dense(target, limit);
    const auto curve = return_probability_curve(spec, oracle_times(spec, cmd.points, params.fit.eps_zero),
                                                params.fit.eps_zero);

    nlohmann::json doc;
    doc["input"] = cmd.input;
    doc["n"] = spec.n;
    doc["points"] = cmd.points;
    doc["curve"] = to_json(curve);
    doc["fitted_dimension"] = curve.fitted_dimension ? nlohmann::json(*curve.fitted_dimension) : nlohmann::json(nullptr);
    std::vector<std::string> warnings;
    try {
      const auto est = estimate_dimension(interpolate_spectrum(spec, params.M), params.s, params.fit);
      doc["weyl_d_s"] = dimension_json(est.d_s);
      doc["difference"] = curve.fitted_dimension && !est.infinite()
                              ? nlohmann::json(std::abs(*curve.fitted_dimension - est.d_s))
                              : nlohmann::json(nullptr);
    } catch (const EstimationError& e) {
      doc["weyl_d_s"] = nullptr;
      doc["difference"] = nullptr;
      warnings.emplace_back(std::string("Weyl-route estimate failed: ") + e.what());
    }
    if (!curve.fitted_dimension) warnings.emplace_back("fit window [1/lambda_max, 1/lambda_2] is degenerate");
    for (const auto& w : warnings) err << "spectradim oracle: warning: " << w << '\n';
    doc["warnings"] = warnings;
    out << doc.dump(2) << '\n';
    return kExitOk;
  } catch (...) {
    return report_failure(err, "oracle");
  }
}

int run_gen(const GenCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    Graph g;
    std::optional<double> truth;
    if (cmd.kind == "lattice") {
      g = generate_lattice(cmd.params, cmd.periodic);
      truth = lattice_ground_truth(cmd.params, cmd.periodic);
    } else if (cmd.kind == "cycle" || cmd.kind == "complete") {
      if (cmd.params.size() != 1) throw std::invalid_argument(cmd.kind + " takes exactly one size");
      if (cmd.kind == "cycle") {
        g = generate_cycle(cmd.params.front());
        truth = 1.0;
      } else {
        g = generate_complete(cmd.params.front());
      }
    } else {
      throw std::invalid_argument("unknown generator '" + cmd.kind + "' (lattice, cycle, complete)");
    }

    if (cmd.out.empty()) {
      write_canonical(out, g);
      if (truth) err << "d=" << format_number(*truth) << '\n';
      return kExitOk;
    }
    std::ofstream file(cmd.out);
    if (!file) throw ParseError("cannot write '" + cmd.out + "'");
    write_canonical(file, g);
    file.close();
    if (!file) throw ParseError("error writing '" + cmd.out + "'");
    nlohmann::json doc;
    doc["kind"] = cmd.kind;
    doc["out"] = cmd.out;
    doc["n"] = g.num_vertices();
    doc["edges"] = g.num_edges();
    doc["ground_truth_d"] = truth ? nlohmann::json(*truth) : nlohmann::json(nullptr);
    out << doc.dump(2) << '\n';
    return kExitOk;
  } catch (...) {
    return report_failure(err, "gen");
  }
}

int run_batch(const BatchCommand& cmd, std::ostream& out, std::ostream& err) {
  std::vector<BatchEntry> entries;
  try {
    entries = collect_inputs(cmd.source);
  } catch (...) {
    return report_failure(err, "batch");
  }

  std::vector<RunReport> reports(entries.size());
  std::size_t jobs = cmd.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cmd.jobs;
  jobs = std::max<std::size_t>(1, std::min(jobs, entries.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
          reports[i] = run_pipeline(entries[i].path, cmd.pipeline);
        }
      });
    }
  }

  out << kCsvHeader << '\n';
  std::size_t failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << csv_row(entries[i].name, reports[i], cmd.timing) << '\n';
    if (reports[i].exit_code != kExitOk) {
      ++failures;
      err << "spectradim batch: " << entries[i].name << ": " << reports[i].error << '\n';
    }
  }
  if (failures > 0) err << "spectradim batch: " << failures << " of " << entries.size() << " graphs failed\n";
  return kExitOk;
}

int run_correlate(const CorrelateCommand& cmd, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream in(cmd.input);
    if (!in) throw ParseError("cannot open '" + cmd.input + "'");
    const PairedLoad load = read_paired_csv(in);
    const std::size_t n = load.series.size();
    if (n < 2) {
      err << "spectradim correlate: need at least 2 valid rows, found " << n << " (" << load.dropped
          << " dropped)\n";
      return kExitInput;
    }
    if (load.dropped > 0) err << "spectradim correlate: warning: dropped " << load.dropped << " rows\n";
    const std::size_t bins = cmd.bins.value_or(default_bins(n));
    if (bins < 2 || bins > n) {
      err << "spectradim correlate: --bins must lie in [2, " << n << "]\n";
      return kExitInput;
    }
    nlohmann::json doc;
    doc["n"] = n;
    try {
      doc["spearman"] = spearman(load.series);
    } catch (const std::domain_error& e) {
      err << "spectradim correlate: " << e.what() << '\n';
      return kExitInput;
    }
    doc["mi"] = mutual_information(load.series, bins);
    doc["mi_units"] = kMutualInformationUnits;
    doc["bins"] = bins;
    doc["dropped"] = load.dropped;
    out << doc.dump(2) << '\n';
    return kExitOk;
  } catch (...) {
    return report_failure(err, "correlate");
  }
}

}  // namespace spectradim::cli
