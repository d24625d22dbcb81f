#include "run_report.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <new>
#include <sstream>
#include <stdexcept>

#include "spectradim/error.hpp"
#include "spectradim/graph.hpp"
#include "spectradim/serialization.hpp"

namespace spectradim::cli {
namespace {

using Clock = std::chrono::steady_clock;

// Lattice spectra are staircases with r^2 around 0.8 at n ~ 1000; only flag
// fits that are clearly not a power law.
constexpr double kPoorFitR2 = 0.5;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string plural(std::size_t count, const char* noun) {
  return std::to_string(count) + " " + noun + (count == 1 ? "" : "s");
}

}  // namespace

int classify_current_exception(std::string& message) {
  try {
    throw;
  } catch (const ParseError& e) {
    message = std::string("parse error: ") + e.what();
    return kExitInput;
  } catch (const UnsupportedFormat& e) {
    message = std::string("unsupported format: ") + e.what();
    return kExitInput;
  } catch (const ConvergenceError& e) {
    std::ostringstream os;
    os << "solver did not converge: " << e.what() << " (iterations " << e.iterations()
       << ", converged " << e.converged() << ", residual " << e.residual() << ")";
    message = os.str();
    return kExitSolver;
  } catch (const SolverError& e) {
    message = std::string("solver error: ") + e.what();
    return kExitSolver;
  } catch (const std::length_error& e) {
    message = std::string("size guard: ") + e.what();
    return kExitSolver;
  } catch (const std::bad_alloc&) {
    message = "out of memory";
    return kExitSolver;
  } catch (const EstimationError& e) {
    message = e.what();
    return kExitEstimation;
  } catch (const std::invalid_argument& e) {
    message = std::string("invalid argument: ") + e.what();
    return kExitInput;
  } catch (const std::exception& e) {
    message = e.what();
    return kExitSolver;
  }
}

RunReport run_pipeline(const std::filesystem::path& path, const PipelineOptions& options) {
  RunReport report;
  report.input = path.string();
  try {
    auto start = Clock::now();
    ParseResult parsed = read_graph_file(path, options.format, options.weighted);
    const Graph& g = parsed.graph;
    const auto comps = connected_components(g);
    report.graph = {g.num_vertices(), g.num_edges(), comps.count(), comps.sizes[comps.largest], g.weighted()};
    report.timing.parse = elapsed_ms(start);

    if (parsed.stats.self_loops_dropped > 0 || parsed.stats.duplicates_merged > 0) {
      report.warnings.push_back("input cleaned: " + plural(parsed.stats.self_loops_dropped, "self-loop") +
                                " dropped, " + plural(parsed.stats.duplicates_merged, "duplicate edge") +
                                " merged");
    }
    if (comps.count() > 1 && options.params.use_lcc) {
      report.warnings.push_back("graph has " + plural(comps.count(), "component") +
                                "; estimating on the largest (" + std::to_string(report.graph.lcc_n) +
                                " vertices)");
    }

    start = Clock::now();
    const Graph lcc = options.params.use_lcc && comps.count() > 1 ? largest_connected_component(g) : Graph{};
    const Graph& target = options.params.use_lcc && comps.count() > 1 ? lcc : g;
    const Spectrum spec = compute_spectrum(target, pipeline_spectrum_config(options.params));
    report.timing.solve = elapsed_ms(start);
    report.spectrum = spec;

    start = Clock::now();
    if (!options.params.use_lcc) check_zero_contamination(spec, options.params.s, options.params.fit.eps_zero);
    const auto interp = interpolate_spectrum(spec, options.params.M);
    report.estimate = estimate_dimension(interp, options.params.s, options.params.fit);
    report.timing.fit = elapsed_ms(start);

    if (report.estimate->infinite()) {
      report.warnings.push_back("fit window never leaves lambda_1 (flat low spectrum); d_s reported as inf");
    } else if (report.estimate->r_squared < kPoorFitR2) {
      report.warnings.push_back("log-log fit is poor (r^2 = " + format_number(report.estimate->r_squared) + ")");
    }
  } catch (...) {
    report.exit_code = classify_current_exception(report.error);
  }
  return report;
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json doc;
  doc["input"] = report.input;
  doc["graph"] = {{"n", report.graph.n},
                  {"edges", report.graph.edges},
                  {"components", report.graph.components},
                  {"lcc_n", report.graph.lcc_n},
                  {"weighted", report.graph.weighted}};
  doc["estimate"] = report.estimate ? to_json(*report.estimate) : nlohmann::json(nullptr);
  if (report.spectrum) {
    nlohmann::json spec = to_json(*report.spectrum);
    spec.erase("values");
    doc["spectrum"] = std::move(spec);
  } else {
    doc["spectrum"] = nullptr;
  }
  doc["timing_ms"] = {{"parse", report.timing.parse},
                      {"solve", report.timing.solve},
                      {"fit", report.timing.fit},
                      {"total", report.timing.total()}};
  doc["warnings"] = report.warnings;
  doc["error"] = report.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(report.error);
  return doc;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string csv_row(const std::string& name, const RunReport& report, bool timing) {
  std::ostringstream row;
  row << csv_field(name) << ',';
  if (report.graph.n > 0) {
    row << report.graph.n << ',' << report.graph.edges;
  } else {
    row << ',';
  }
  row << ',';
  if (report.estimate) {
    const auto& est = *report.estimate;
    row << format_number(est.d_s) << ',' << format_number(est.slope) << ','
        << format_number(est.r_squared) << ',' << to_string(est.solver);
  } else {
    row << ",,,";
  }
  row << ',';
  if (timing) row << format_fixed(report.timing.total(), 3);
  row << ',' << csv_field(report.error);
  return row.str();
}

}  // namespace spectradim::cli
