#include "conjlab/json_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "conjlab/errors.hpp"

namespace conjlab {

namespace {

// "pi", "2pi", "0.5pi", "3pi/4", "-pi/2", optional whitespace. The
// coefficient defaults to 1, the divisor to 1.
bool try_parse_pi_literal(const std::string& raw, double& out) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const std::size_t pos = s.find("pi");
  if (pos == std::string::npos) return false;

  double sign = 1.0;
  std::string head = s.substr(0, pos);
  if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
    if (head[0] == '-') sign = -1.0;
    head = head.substr(1);
  }
  double coeff = 1.0;
  if (!head.empty()) {
    std::size_t used = 0;
    try {
      coeff = std::stod(head, &used);
    } catch (const std::exception&) {
      return false;
    }
    if (used != head.size()) return false;
  }

  std::string tail = s.substr(pos + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') return false;
    tail = tail.substr(1);
    std::size_t used = 0;
    try {
      divisor = std::stod(tail, &used);
    } catch (const std::exception&) {
      return false;
    }
    if (used != tail.size() || divisor == 0.0) return false;
  }
  out = sign * coeff * kPi / divisor;
  return true;
}

std::vector<double> parse_json_angle_array(const nlohmann::json& arr,
                                           const char* what) {
  if (!arr.is_array())
    throw ConfigError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& el : arr) out.push_back(parse_angle(el));
  return out;
}

nlohmann::json fit_or_null(const DecayFit& fit) {
  if (fit.n_points == 0) return nullptr;
  return to_json(fit);
}

}  // namespace

double parse_angle(const std::string& text) {
  double v = 0.0;
  if (try_parse_pi_literal(text, v)) return v;
  std::size_t used = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse angle: '" + text + "'");
  }
  while (used < text.size() &&
         std::isspace(static_cast<unsigned char>(text[used])))
    ++used;
  if (used != text.size())
    throw ConfigError("cannot parse angle: '" + text + "'");
  return v;
}

double parse_angle(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw ConfigError("angle must be a number or a pi-literal string, got " +
                    j.dump());
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos)
      throw ConfigError("empty entry in angle list: '" + text + "'");
    out.push_back(parse_angle(item));
  }
  if (out.empty()) throw ConfigError("empty angle list");
  return out;
}

ArcSet parse_arcset(const nlohmann::json& arcs) {
  if (!arcs.is_array() || arcs.empty())
    throw ConfigError("arcs must be a nonempty array of [a, b] pairs");
  std::vector<Arc> parsed;
  for (const auto& pair : arcs) {
    if (!pair.is_array() || pair.size() != 2)
      throw ConfigError("each arc must be a [a, b] pair, got " + pair.dump());
    parsed.push_back({parse_angle(pair[0]), parse_angle(pair[1])});
  }
  try {
    return ArcSet(parsed);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid arcs: ") + e.what());
  }
}

StepSymbol parse_step_symbol(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ConfigError("symbol must be an object with a string 'type'");
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "rho") return rho(parse_arcset(j.at("arcs")));
    if (type == "indicator") return indicator(parse_arcset(j.at("arcs")));
    if (type == "scaled_rho") {
      if (!j.contains("c")) throw ConfigError("scaled_rho needs 'c'");
      return scale_symbol(parse_angle(j.at("c")), rho(parse_arcset(j.at("arcs"))));
    }
    if (type == "step") {
      const std::vector<double> bp =
          parse_json_angle_array(j.at("breakpoints"), "breakpoints");
      std::vector<double> vals;
      if (!j.contains("values") || !j["values"].is_array())
        throw ConfigError("step symbol needs a 'values' array");
      for (const auto& el : j["values"]) vals.push_back(parse_angle(el));
      return StepSymbol(bp, vals);
    }
  } catch (const nlohmann::json::out_of_range& e) {
    throw ConfigError(std::string("symbol missing field: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid symbol: ") + e.what());
  }
  throw ConfigError("unknown symbol type: '" + type + "'");
}

nlohmann::json to_json(const StepSymbol& f) {
  return {{"type", "step"},
          {"breakpoints", f.breakpoints()},
          {"values", f.values()}};
}

nlohmann::json to_json(const ArcSet& e) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : e.arcs()) arcs.push_back({a.a, a.b});
  return {{"arcs", arcs}, {"measure", e.measure()}};
}

nlohmann::json to_json(const DistributionCurve& curve) {
  return {{"lambdas", curve.lambdas},
          {"measures", curve.measures},
          {"support_counts", curve.support_counts}};
}

nlohmann::json to_json(const DecayFit& fit) {
  return {{"c", fit.c},
          {"alpha", fit.alpha},
          {"rms_residual", fit.rms_residual},
          {"lambda_lo", fit.lambda_lo},
          {"lambda_hi", fit.lambda_hi},
          {"n_points", fit.n_points}};
}

nlohmann::json to_json(const LayerCakeResult& r) {
  return {{"value", r.value},
          {"trapezoid", r.trapezoid},
          {"tail", r.tail},
          {"tail_alpha", r.tail_alpha},
          {"tail_divergent", r.tail_divergent}};
}

nlohmann::json to_json(const VerdictReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"reason", r.reason},
          {"theorem", r.theorem},
          {"range_gap", r.range_gap},
          {"range_diameter", r.range_diameter},
          {"min_abs_value", r.min_abs_value},
          {"max_jump", r.max_jump},
          {"fit", fit_or_null(r.fit)},
          {"refinement_ratio", r.refinement_ratio},
          {"exp_integral_divergent", r.exp_integral_divergent}};
}

nlohmann::json to_json(const ZygmundCheck& r) {
  return {{"lambdas", r.lambdas},
          {"measured", r.measured},
          {"bound", r.bound},
          {"all_below", r.all_below}};
}

nlohmann::json to_json(const ConjugationReport& r) {
  return {{"n", r.n},
          {"max_fft_vs_exact", r.max_fft_vs_exact},
          {"max_pv_vs_exact", r.max_pv_vs_exact},
          {"max_fft_vs_pv", r.max_fft_vs_pv}};
}

nlohmann::json to_json(const HardyGrowthCurve& r) {
  return {{"p", r.p}, {"radii", r.radii}, {"means", r.means}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary);
  if (!impl_->out)
    throw ConfigError("cannot open output file: " + path);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->out << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\r\n") != std::string::npos) {
      impl_->out << '"';
      for (char ch : c) {
        if (ch == '"') impl_->out << '"';
        impl_->out << ch;
      }
      impl_->out << '"';
    } else {
      impl_->out << c;
    }
  }
  impl_->out << "\r\n";
}

void CsvWriter::numeric_row(const std::vector<double>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double v : cells) text.push_back(format_double(v));
  row(text);
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace conjlab
