#include "spectradim/serialization.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "spectradim/error.hpp"

namespace spectradim {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

nlohmann::json to_json(const Spectrum& spec) {
  nlohmann::json doc;
  doc["n"] = spec.n;
  doc["kind"] = to_string(spec.kind);
  doc["m"] = spec.m();
  doc["solver"] = to_string(spec.solver);
  doc["seed"] = spec.seed ? nlohmann::json(*spec.seed) : nlohmann::json(nullptr);
  doc["residual_bound"] = spec.residual_bound ? nlohmann::json(*spec.residual_bound) : nlohmann::json(nullptr);
  doc["values"] = spec.values;
  return doc;
}

Spectrum spectrum_from_json(const nlohmann::json& doc) {
  try {
    Spectrum spec;
    spec.n = doc.at("n").get<std::size_t>();
    const auto kind = doc.at("kind").get<std::string>();
    if (kind != "full" && kind != "partial") throw ParseError("unknown spectrum kind '" + kind + "'");
    spec.kind = kind == "full" ? SpectrumKind::full : SpectrumKind::partial;
    const auto solver = doc.at("solver").get<std::string>();
    if (solver != "dense" && solver != "iterative") throw ParseError("unknown solver '" + solver + "'");
    spec.solver = solver == "dense" ? SolverKind::dense : SolverKind::iterative;
    if (doc.contains("seed") && !doc["seed"].is_null()) spec.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("residual_bound") && !doc["residual_bound"].is_null()) {
      spec.residual_bound = doc["residual_bound"].get<double>();
    }
    spec.values = doc.at("values").get<std::vector<double>>();
    if (doc.contains("m") && doc["m"].get<std::size_t>() != spec.values.size()) {
      throw ParseError("spectrum 'm' does not match the number of values");
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed spectrum JSON: ") + e.what());
  }
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  std::string text(buf, ptr);
  if (text.find('.') != std::string::npos) {
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
  }
  if (text == "-0") text = "0";
  return text;
}

void write_spectrum_text(std::ostream& out, const Spectrum& spec) {
  for (double v : spec.values) out << format_fixed(v, kSpectrumTextDecimals) << '\n';
}

nlohmann::json to_json(const DimensionEstimate& est) {
  nlohmann::json doc;
  doc["d_s"] = est.infinite() ? nlohmann::json("inf") : nlohmann::json(est.d_s);
  doc["slope"] = est.slope;
  doc["r_squared"] = est.r_squared;
  doc["points_used"] = est.points_used;
  doc["s"] = est.s;
  doc["lambda_s"] = est.lambda_s;
  doc["M"] = est.M;
  doc["n"] = est.n;
  doc["solver"] = to_string(est.solver);
  return doc;
}

nlohmann::json to_json(const ReturnProbabilityCurve& curve) {
  nlohmann::json doc;
  doc["times"] = curve.times;
  doc["probabilities"] = curve.probabilities;
  doc["fitted_dimension"] =
      curve.fitted_dimension ? nlohmann::json(*curve.fitted_dimension) : nlohmann::json(nullptr);
  doc["fit_window"] = {curve.t_lo, curve.t_hi};
  return doc;
}

}  // namespace spectradim
