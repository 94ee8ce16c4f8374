#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "conjlab/circle.hpp"
#include "conjlab/conjugate.hpp"
#include "conjlab/distribution.hpp"
#include "conjlab/poisson.hpp"
#include "conjlab/series.hpp"

namespace conjlab {

// Accepts plain decimals and rational multiples of pi: "pi", "-pi/2",
// "3pi/4", "0.5pi", "2pi". ConfigError on anything else.
double parse_angle(const std::string& text);
double parse_angle(const nlohmann::json& j);  // number or pi-literal string

// Comma-separated numbers or pi-literals.
std::vector<double> parse_angle_list(const std::string& text);

// Symbol descriptions:
//   {"type":"rho",        "arcs":[[0, "pi"]]}
//   {"type":"indicator",  "arcs":[[0, "pi"]]}
//   {"type":"scaled_rho", "c":"pi/2", "arcs":[[0, "pi"]]}
//   {"type":"step",       "breakpoints":[0, "pi", "2pi"], "values":[1, -1]}
ArcSet parse_arcset(const nlohmann::json& arcs);
StepSymbol parse_step_symbol(const nlohmann::json& j);

nlohmann::json to_json(const StepSymbol& f);
nlohmann::json to_json(const ArcSet& e);
nlohmann::json to_json(const DistributionCurve& curve);
nlohmann::json to_json(const DecayFit& fit);
nlohmann::json to_json(const LayerCakeResult& r);
nlohmann::json to_json(const VerdictReport& r);
nlohmann::json to_json(const ZygmundCheck& r);
nlohmann::json to_json(const ConjugationReport& r);
nlohmann::json to_json(const HardyGrowthCurve& r);

// 17 significant digits, '.' decimal separator, no locale.
std::string format_double(double v);

// RFC 4180 CSV: CRLF line endings, numeric cells via format_double.
class CsvWriter {
public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);
  void numeric_row(const std::vector<double>& cells);

private:
  struct Impl;
  Impl* impl_;
};

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace conjlab
