#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "spectradim/dimension.hpp"
#include "spectradim/spectrum.hpp"

namespace spectradim {

/// {"n", "kind", "m", "solver", "seed", "residual_bound", "values"}; seed and
/// residual_bound are null for dense spectra.
nlohmann::json to_json(const Spectrum& spec);
/// Throws ParseError on a malformed document.
Spectrum spectrum_from_json(const nlohmann::json& doc);

inline constexpr int kSpectrumTextDecimals = 12;

/// Fixed notation with at most `decimals` places, trailing zeros trimmed,
/// negative zero printed as "0".
std::string format_fixed(double value, int decimals);

/// One eigenvalue per line, rounded to kSpectrumTextDecimals places so solver
/// noise in the last bits does not leak into plots (K_2 prints "0" and "2").
/// JSON output keeps full precision.
void write_spectrum_text(std::ostream& out, const Spectrum& spec);

/// {"d_s": number | "inf", "slope", "r_squared", "points_used", "s",
///  "lambda_s", "M", "n", "solver"}
nlohmann::json to_json(const DimensionEstimate& est);

nlohmann::json to_json(const ReturnProbabilityCurve& curve);

/// Shortest decimal that parses back to the same double ("inf" for +inf).
std::string format_number(double value);

}  // namespace spectradim
