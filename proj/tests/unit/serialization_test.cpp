#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "spectradim/error.hpp"
#include "spectradim/generators.hpp"
#include "spectradim/serialization.hpp"

namespace spectradim {
namespace {

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.5), "1.5");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  const double awkward = 1.0 - std::cos(0.3);
  EXPECT_EQ(std::stod(format_number(awkward)), awkward);
}

TEST(SpectrumText, OneValuePerLine) {
  Spectrum spec;
  spec.n = 2;
  spec.values = {0.0, 2.0};
  std::ostringstream out;
  write_spectrum_text(out, spec);
  EXPECT_EQ(out.str(), "0\n2\n");
}

TEST(SpectrumText, DenseK2) {
  std::ostringstream out;
  write_spectrum_text(out, full_spectrum_dense(generate_complete(2)));
  EXPECT_EQ(out.str(), "0\n2\n");
}

TEST(FormatFixed, TrimsAndRounds) {
  EXPECT_EQ(format_fixed(1.9999999999999996, 12), "2");
  EXPECT_EQ(format_fixed(-2e-16, 12), "0");
  EXPECT_EQ(format_fixed(0.0761204674887, 12), "0.076120467489");
  EXPECT_EQ(format_fixed(1.5, 12), "1.5");
  EXPECT_EQ(format_fixed(10.0, 3), "10");
}

TEST(SpectrumJson, DenseFields) {
  const auto spec = full_spectrum_dense(generate_complete(3));
  const auto doc = to_json(spec);
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["kind"], "full");
  EXPECT_EQ(doc["m"], 3);
  EXPECT_EQ(doc["solver"], "dense");
  EXPECT_TRUE(doc["seed"].is_null());
  EXPECT_TRUE(doc["residual_bound"].is_null());
  EXPECT_EQ(doc["values"].size(), 3u);
}

TEST(SpectrumJson, RoundTripIsExact) {
  const auto spec = partial_spectrum_iterative(generate_cycle(300), 10);
  const auto back = spectrum_from_json(nlohmann::json::parse(to_json(spec).dump()));
  EXPECT_EQ(back.values, spec.values);
  EXPECT_EQ(back.n, spec.n);
  EXPECT_EQ(back.kind, SpectrumKind::partial);
  EXPECT_EQ(back.solver, SolverKind::iterative);
  EXPECT_EQ(back.seed, spec.seed);
  EXPECT_EQ(back.residual_bound, spec.residual_bound);
}

TEST(SpectrumJson, Malformed) {
  EXPECT_THROW(spectrum_from_json(nlohmann::json::parse(R"({"n": 2})")), ParseError);
  EXPECT_THROW(spectrum_from_json(nlohmann::json::parse(
                   R"({"n": 2, "kind": "half", "solver": "dense", "values": [0, 2]})")),
               ParseError);
  EXPECT_THROW(spectrum_from_json(nlohmann::json::parse(
                   R"({"n": 2, "kind": "full", "m": 3, "solver": "dense", "values": [0, 2]})")),
               ParseError);
}

TEST(EstimateJson, InfiniteIsAString) {
  DimensionEstimate est;
  est.slope = 0.0;
  est.M = 8192;
  est.n = 100;
  const auto doc = to_json(est);
  EXPECT_EQ(doc["d_s"], "inf");
  EXPECT_EQ(doc["solver"], "dense");

  est.d_s = 2.0;
  est.slope = 1.0;
  EXPECT_EQ(to_json(est)["d_s"], 2.0);
}

TEST(CurveJson, Fields) {
  ReturnProbabilityCurve curve;
  curve.times = {0.5, 1.0};
  curve.probabilities = {0.9, 0.8};
  curve.t_lo = 0.5;
  curve.t_hi = 1.0;
  auto doc = to_json(curve);
  EXPECT_TRUE(doc["fitted_dimension"].is_null());
  EXPECT_EQ(doc["fit_window"], nlohmann::json::array({0.5, 1.0}));
  curve.fitted_dimension = 1.25;
  EXPECT_EQ(to_json(curve)["fitted_dimension"], 1.25);
}

}  // namespace
}  // namespace spectradim
