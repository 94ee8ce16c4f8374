#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conjlab/circle.hpp"
#include "conjlab/conjugate.hpp"
#include "conjlab/distribution.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/json_io.hpp"
#include "conjlab/poisson.hpp"
#include "conjlab/selftest.hpp"
#include "conjlab/series.hpp"
#include "conjlab/strip.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw conjlab::ConfigError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw conjlab::ConfigError(std::string(what) + ": " + e.what());
  }
}

// Inline JSON when the first non-blank character matches, file path otherwise.
json inline_or_file(const std::string& text, char inline_lead, const char* what) {
  const std::size_t pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && text[pos] == inline_lead)
    return parse_json_text(text, what);
  return parse_json_text(read_file(text), what);
}

conjlab::StepSymbol load_symbol(const std::string& text) {
  if (text.empty()) throw conjlab::ConfigError("--symbol is required");
  return conjlab::parse_step_symbol(inline_or_file(text, '{', "symbol"));
}

conjlab::ArcSet load_arcs(const std::string& text) {
  if (text.empty()) throw conjlab::ConfigError("--arcs is required");
  return conjlab::parse_arcset(inline_or_file(text, '[', "arcs"));
}

void require_out(const std::string& out) {
  if (out.empty()) throw conjlab::ConfigError("--out is required");
}

void check_format(const std::string& format) {
  if (format != "csv" && format != "json")
    throw conjlab::ConfigError("--format must be csv or json, got '" + format + "'");
}

std::vector<double> jump_anchor_list(const conjlab::StepSymbol& f) {
  std::vector<double> anchors;
  const std::vector<double> jumps = f.jump_heights();
  for (std::size_t i = 0; i < jumps.size(); ++i)
    if (jumps[i] != 0.0) anchors.push_back(f.breakpoints()[i]);
  return anchors;
}

std::vector<double> uniform_lambdas(double lmax) {
  if (!(lmax > 0.0)) throw conjlab::ConfigError("--lmax must be positive");
  const int k = std::max(1, static_cast<int>(std::lround(lmax * 10.0)));
  std::vector<double> out(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) out[static_cast<std::size_t>(i)] = lmax * i / k;
  return out;
}

struct Binding {
  CLI::Option* opt;
  std::function<void(const json&)> apply;
};

struct SubCtx {
  CLI::App* cmd = nullptr;
  std::string module;  // selftest suite behind this subcommand
  bool selftest = false;
  std::map<std::string, Binding> bindings;
  std::function<void()> run;
};

double json_to_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return conjlab::parse_angle(j.get<std::string>());
  throw conjlab::ConfigError("expected a number, got " + j.dump());
}

long long json_to_int(const json& j) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    try {
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw conjlab::ConfigError("expected an integer, got " + j.dump());
}

void bind_string(SubCtx& c, const std::string& name, std::string& var,
                 const std::string& desc) {
  CLI::Option* opt = c.cmd->add_option("--" + name, var, desc);
  c.bindings[name] = {opt, [&var](const json& j) {
                        if (j.is_string())
                          var = j.get<std::string>();
                        else
                          var = j.dump();
                      }};
}

void bind_double(SubCtx& c, const std::string& name, double& var,
                 const std::string& desc) {
  CLI::Option* opt = c.cmd->add_option("--" + name, var, desc);
  c.bindings[name] = {opt, [&var](const json& j) { var = json_to_double(j); }};
}

// Accepts pi-literals on the command line as well, so the variable is
// parsed from text rather than by CLI11.
void bind_angle(SubCtx& c, const std::string& name, std::string& var,
                const std::string& desc) {
  bind_string(c, name, var, desc + " (radians; pi-literals like pi/2 accepted)");
}

void bind_int(SubCtx& c, const std::string& name, int& var,
              const std::string& desc) {
  CLI::Option* opt = c.cmd->add_option("--" + name, var, desc);
  c.bindings[name] = {opt, [&var](const json& j) {
                        var = static_cast<int>(json_to_int(j));
                      }};
}

void bind_size(SubCtx& c, const std::string& name, std::size_t& var,
               const std::string& desc) {
  CLI::Option* opt = c.cmd->add_option("--" + name, var, desc);
  c.bindings[name] = {opt, [&var](const json& j) {
                        const long long v = json_to_int(j);
                        if (v < 0) throw conjlab::ConfigError("expected nonnegative");
                        var = static_cast<std::size_t>(v);
                      }};
}

void bind_selftest(SubCtx& c) {
  CLI::Option* opt =
      c.cmd->add_flag("--selftest", c.selftest, "run this module's invariant suite");
  c.bindings["selftest"] = {opt, [&c](const json& j) {
                              if (!j.is_boolean())
                                throw conjlab::ConfigError("selftest must be a boolean");
                              c.selftest = j.get<bool>();
                            }};
}

int report_selftests(const std::vector<conjlab::SelftestResult>& results) {
  bool all_ok = true;
  for (const conjlab::SelftestResult& r : results) {
    std::printf("module %s: %zu passed, %zu failed\n", r.module.c_str(),
                r.passed.size(), r.failed.size());
    for (const std::string& f : r.failed) std::printf("  FAIL %s\n", f.c_str());
    all_ok = all_ok && r.ok();
  }
  std::printf("selftest: %s\n", all_ok ? "PASS" : "FAIL");
  return all_ok ? 0 : 3;
}

void note_written(const std::string& path) {
  std::printf("wrote %s\n", path.c_str());
}

int run_cli(int argc, char** argv) {
  using namespace conjlab;

  CLI::App app{"conjugate functions on the unit circle: spectral multiplier, "
               "FFT and principal-value routes, with distribution and Hardy "
               "growth experiments",
               "conjugate-lab"};
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file holding the subcommand and its options");
  bool app_selftest = false;
  app.add_flag("--selftest", app_selftest, "run every module's invariant suite");

  std::vector<SubCtx*> contexts;

  // ---- conjugate ----
  SubCtx conj_ctx;
  struct {
    std::string symbol, out;
    std::size_t n = 4096;
  } conj_opts;
  conj_ctx.cmd = app.add_subcommand(
      "conjugate", "conjugate a step symbol by all three methods, emit CSV");
  conj_ctx.module = "conjugator";
  bind_string(conj_ctx, "symbol", conj_opts.symbol, "symbol JSON (inline or file)");
  bind_size(conj_ctx, "n", conj_opts.n, "grid size, power of two");
  bind_string(conj_ctx, "out", conj_opts.out, "output CSV path");
  bind_selftest(conj_ctx);
  conj_ctx.run = [&]() {
    require_out(conj_opts.out);
    const StepSymbol f = load_symbol(conj_opts.symbol);
    const std::size_t n = conj_opts.n;
    if (n < 4 || (n & (n - 1)) != 0)
      throw ConfigError("--n must be a power of two >= 4");
    const CircleGrid grid(n, 0.5);
    const SampledFn samples = sample(f, grid);
    const std::vector<double> by_fft = conjugate_grid(samples);
    const std::vector<double> by_pv = conjugate_pv_nodes(samples);
    ConjugationReport rep;
    rep.n = n;
    CsvWriter csv(conj_opts.out);
    csv.row({"theta", "exact", "fft", "pv"});
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = grid.node(j);
      const double exact = conjugate_step_exact(f, theta);
      rep.max_fft_vs_exact =
          std::max(rep.max_fft_vs_exact, std::abs(by_fft[j] - exact));
      rep.max_pv_vs_exact =
          std::max(rep.max_pv_vs_exact, std::abs(by_pv[j] - exact));
      rep.max_fft_vs_pv =
          std::max(rep.max_fft_vs_pv, std::abs(by_fft[j] - by_pv[j]));
      csv.numeric_row({theta, exact, by_fft[j], by_pv[j]});
    }
    write_json_file(conj_opts.out + ".footer.json", to_json(rep));
    note_written(conj_opts.out);
    note_written(conj_opts.out + ".footer.json");
  };
  contexts.push_back(&conj_ctx);

  // ---- distribution ----
  SubCtx dist_ctx;
  struct {
    std::string symbol, out, lambdas, format = "csv";
    int depth = 40;
    double lmax = 6.0, ratio = 0.5;
  } dist_opts;
  dist_ctx.cmd = app.add_subcommand(
      "distribution", "distribution function of |f~| on a graded mesh");
  dist_ctx.module = "distribution";
  bind_string(dist_ctx, "symbol", dist_opts.symbol, "symbol JSON (inline or file)");
  bind_int(dist_ctx, "depth", dist_opts.depth, "graded mesh depth");
  bind_double(dist_ctx, "ratio", dist_opts.ratio, "graded mesh ratio in (0,1)");
  bind_double(dist_ctx, "lmax", dist_opts.lmax, "largest lambda of the level grid");
  bind_string(dist_ctx, "lambdas", dist_opts.lambdas,
              "explicit comma-separated lambda grid (overrides --lmax)");
  bind_string(dist_ctx, "format", dist_opts.format, "csv or json");
  bind_string(dist_ctx, "out", dist_opts.out, "output path");
  bind_selftest(dist_ctx);
  dist_ctx.run = [&]() {
    require_out(dist_opts.out);
    check_format(dist_opts.format);
    const StepSymbol f = load_symbol(dist_opts.symbol);
    if (dist_opts.depth < 1 || dist_opts.depth > 200)
      throw ConfigError("--depth must lie in [1, 200]");
    if (!(dist_opts.ratio > 0.0 && dist_opts.ratio < 1.0))
      throw ConfigError("--ratio must lie in (0, 1)");
    const std::vector<double> lams = dist_opts.lambdas.empty()
                                         ? uniform_lambdas(dist_opts.lmax)
                                         : parse_angle_list(dist_opts.lambdas);
    std::vector<double> values, weights;
    const std::vector<double> anchors = jump_anchor_list(f);
    if (anchors.empty()) {
      // Constant symbol: conjugate is identically zero.
      const CircleGrid grid(4096, 0.5);
      values.assign(grid.size(), 0.0);
      weights.assign(grid.size(), kTwoPi / static_cast<double>(grid.size()));
    } else {
      const GradedGrid mesh(anchors, dist_opts.depth, dist_opts.ratio);
      const std::vector<double> conj = conjugate_step_exact(f, mesh.nodes());
      values.resize(conj.size());
      for (std::size_t i = 0; i < conj.size(); ++i) values[i] = std::abs(conj[i]);
      weights = mesh.weights();
    }
    const DistributionCurve curve = distribution_curve(values, weights, lams);
    if (dist_opts.format == "csv") {
      CsvWriter csv(dist_opts.out);
      csv.row({"lambda", "measure", "support_count"});
      for (std::size_t i = 0; i < curve.lambdas.size(); ++i)
        csv.numeric_row({curve.lambdas[i], curve.measures[i],
                         static_cast<double>(curve.support_counts[i])});
    } else {
      json j{{"symbol", to_json(f)},
             {"depth", dist_opts.depth},
             {"ratio", dist_opts.ratio},
             {"curve", to_json(curve)}};
      try {
        j["fit"] = to_json(fit_decay(curve, 1.0, curve.lambdas.back()));
      } catch (const InsufficientSupportError&) {
        j["fit"] = nullptr;
      }
      write_json_file(dist_opts.out, j);
    }
    note_written(dist_opts.out);
  };
  contexts.push_back(&dist_ctx);

  // ---- theorem1 ----
  SubCtx th1_ctx;
  struct {
    std::string f_const, arcs, out;
    double lmax = 6.0;
  } th1_opts;
  th1_ctx.cmd = app.add_subcommand(
      "theorem1", "integrability verdict for exp of the conjugate of f*rho_E");
  th1_ctx.module = "distribution";
  bind_angle(th1_ctx, "f-const", th1_opts.f_const, "constant value of f");
  bind_string(th1_ctx, "arcs", th1_opts.arcs, "arc set JSON (inline or file)");
  bind_double(th1_ctx, "lmax", th1_opts.lmax, "upper edge of the decay-fit window");
  bind_string(th1_ctx, "out", th1_opts.out, "output JSON path");
  bind_selftest(th1_ctx);
  th1_ctx.run = [&]() {
    require_out(th1_opts.out);
    if (th1_opts.f_const.empty()) throw ConfigError("--f-const is required");
    const double c = parse_angle(th1_opts.f_const);
    const ArcSet e = load_arcs(th1_opts.arcs);
    if (!(th1_opts.lmax > 1.0))
      throw ConfigError("--lmax must exceed the fit window start 1");
    const VerdictReport rep = verdict(StepSymbol::constant(c), e);
    json j = to_json(rep);
    j["lambda_window"] = {1.0, th1_opts.lmax};
    if (th1_opts.lmax != 6.0) {
      const StepSymbol fe = scale_symbol(c, rho(e));
      const std::vector<double> anchors = jump_anchor_list(fe);
      if (!anchors.empty()) {
        const GradedGrid mesh(anchors, 40);
        const std::vector<double> conj = conjugate_step_exact(fe, mesh.nodes());
        std::vector<double> vals(conj.size());
        for (std::size_t i = 0; i < conj.size(); ++i) vals[i] = std::abs(conj[i]);
        const DistributionCurve curve =
            distribution_curve(vals, mesh.weights(), uniform_lambdas(th1_opts.lmax));
        try {
          j["fit"] = to_json(fit_decay(curve, 1.0, th1_opts.lmax));
        } catch (const InsufficientSupportError&) {
          j["fit"] = nullptr;
        }
      }
    }
    write_json_file(th1_opts.out, j);
    note_written(th1_opts.out);
  };
  contexts.push_back(&th1_ctx);

  // ---- zygmund-check ----
  SubCtx zyg_ctx;
  struct {
    std::string arcs, out, lambdas, format = "json";
    double lmax = 6.0;
    int depth = 40;
  } zyg_opts;
  zyg_ctx.cmd = app.add_subcommand(
      "zygmund-check", "weak-type upper bound for the conjugate indicator");
  zyg_ctx.module = "distribution";
  bind_string(zyg_ctx, "arcs", zyg_opts.arcs, "arc set JSON (inline or file)");
  bind_double(zyg_ctx, "lmax", zyg_opts.lmax, "check lambda in {0, 0.5, ..., lmax}");
  bind_string(zyg_ctx, "lambdas", zyg_opts.lambdas,
              "explicit comma-separated lambdas (overrides --lmax)");
  bind_int(zyg_ctx, "depth", zyg_opts.depth, "graded mesh depth");
  bind_string(zyg_ctx, "format", zyg_opts.format, "json or csv");
  bind_string(zyg_ctx, "out", zyg_opts.out, "output path");
  bind_selftest(zyg_ctx);
  zyg_ctx.run = [&]() {
    require_out(zyg_opts.out);
    check_format(zyg_opts.format);
    const ArcSet e = load_arcs(zyg_opts.arcs);
    if (zyg_opts.depth < 1 || zyg_opts.depth > 200)
      throw ConfigError("--depth must lie in [1, 200]");
    std::vector<double> lams;
    if (zyg_opts.lambdas.empty()) {
      if (!(zyg_opts.lmax >= 0.0)) throw ConfigError("--lmax must be nonnegative");
      for (double l = 0.0; l <= zyg_opts.lmax + 1e-12; l += 0.5) lams.push_back(l);
    } else {
      lams = parse_angle_list(zyg_opts.lambdas);
    }
    const ZygmundCheck chk = zygmund_upper_check(e, lams, zyg_opts.depth);
    if (zyg_opts.format == "csv") {
      CsvWriter csv(zyg_opts.out);
      csv.row({"lambda", "measured", "bound"});
      for (std::size_t i = 0; i < chk.lambdas.size(); ++i)
        csv.numeric_row({chk.lambdas[i], chk.measured[i], chk.bound[i]});
    } else {
      json j = to_json(chk);
      j["arcs"] = to_json(e)["arcs"];
      j["depth"] = zyg_opts.depth;
      write_json_file(zyg_opts.out, j);
    }
    note_written(zyg_opts.out);
  };
  contexts.push_back(&zyg_ctx);

  // ---- strip ----
  SubCtx strip_ctx;
  struct {
    std::string lambda = "1", out;
    int nx = 33, ny = 33;
    double ymin = -2.0, ymax = 6.0;
  } strip_opts;
  strip_ctx.cmd =
      app.add_subcommand("strip", "heatmap samples of the strip harmonic g_lambda");
  strip_ctx.module = "strip_harmonic";
  bind_angle(strip_ctx, "lambda", strip_opts.lambda, "level parameter, >= 0");
  bind_int(strip_ctx, "nx", strip_opts.nx, "columns across (-pi/2, pi/2)");
  bind_int(strip_ctx, "ny", strip_opts.ny, "rows across [ymin, ymax]");
  bind_double(strip_ctx, "ymin", strip_opts.ymin, "lowest y");
  bind_double(strip_ctx, "ymax", strip_opts.ymax, "highest y");
  bind_string(strip_ctx, "out", strip_opts.out, "output CSV path");
  bind_selftest(strip_ctx);
  strip_ctx.run = [&]() {
    require_out(strip_opts.out);
    const double lam = parse_angle(strip_opts.lambda);
    if (!(lam >= 0.0)) throw ConfigError("--lambda must be nonnegative");
    if (strip_opts.nx < 1 || strip_opts.ny < 1)
      throw ConfigError("--nx and --ny must be positive");
    if (strip_opts.ny > 1 && !(strip_opts.ymax > strip_opts.ymin))
      throw ConfigError("--ymax must exceed --ymin");
    CsvWriter csv(strip_opts.out);
    csv.row({"x", "y", "g"});
    for (int iy = 0; iy < strip_opts.ny; ++iy) {
      const double y = strip_opts.ny == 1
                           ? strip_opts.ymin
                           : strip_opts.ymin + (strip_opts.ymax - strip_opts.ymin) *
                                                   iy / (strip_opts.ny - 1);
      for (int ix = 0; ix < strip_opts.nx; ++ix) {
        const double x = -0.5 * kPi + kPi * (ix + 0.5) / strip_opts.nx;
        csv.numeric_row({x, y, g_lambda(StripPoint(x, y), lam)});
      }
    }
    note_written(strip_opts.out);
  };
  contexts.push_back(&strip_ctx);

  // ---- series ----
  SubCtx series_ctx;
  struct {
    std::string xs, out;
    double tol = 1e-4;
  } series_opts;
  series_ctx.cmd = app.add_subcommand(
      "series", "slow cosine series against its double-log asymptote");
  series_ctx.module = "slow_series";
  bind_string(series_ctx, "xs", series_opts.xs, "comma-separated arguments");
  bind_double(series_ctx, "tol", series_opts.tol, "absolute summation tolerance");
  bind_string(series_ctx, "out", series_opts.out, "output CSV path");
  bind_selftest(series_ctx);
  series_ctx.run = [&]() {
    require_out(series_opts.out);
    if (series_opts.xs.empty()) throw ConfigError("--xs is required");
    if (!(series_opts.tol > 0.0)) throw ConfigError("--tol must be positive");
    const std::vector<double> xs = parse_angle_list(series_opts.xs);
    for (double x : xs)
      if (!(x > 0.0 && x < std::exp(-1.0)))
        throw ConfigError("each x must lie in (0, 1/e) for the asymptote");
    CsvWriter csv(series_opts.out);
    csv.row({"x", "series", "asymptote", "err", "bound"});
    for (double x : xs) {
      const SeriesValue s = loglog_cos_series(x, series_opts.tol);
      const double asym = asymptote(x);
      const double big_l = std::log(1.0 / x);
      const double bound =
          5.0 * std::cbrt(std::log(big_l)) / std::pow(big_l, 2.0 / 3.0);
      csv.numeric_row({x, s.value, asym, s.value - asym, bound});
    }
    note_written(series_opts.out);
  };
  contexts.push_back(&series_ctx);

  // ---- jump-example ----
  SubCtx jump_ctx;
  struct {
    std::string t0 = "pi", offsets = "1e-2,1e-3,1e-4,1e-5,1e-6", out,
                format = "csv";
    double delta = 0.5, taper_width = 0.25, tol = 1e-3;
  } jump_opts;
  jump_ctx.cmd = app.add_subcommand(
      "jump-example", "envelope table or verdict for the pi-jump symbol");
  jump_ctx.module = "slow_series";
  bind_angle(jump_ctx, "t0", jump_opts.t0, "jump location");
  bind_double(jump_ctx, "delta", jump_opts.delta, "half-width of the step plateau");
  bind_double(jump_ctx, "taper-width", jump_opts.taper_width, "linear taper width");
  bind_string(jump_ctx, "offsets", jump_opts.offsets,
              "comma-separated |t - t0| probe offsets");
  bind_double(jump_ctx, "tol", jump_opts.tol, "series tolerance");
  bind_string(jump_ctx, "format", jump_opts.format,
              "csv (envelope table) or json (verdict)");
  bind_string(jump_ctx, "out", jump_opts.out, "output path");
  bind_selftest(jump_ctx);
  jump_ctx.run = [&]() {
    require_out(jump_opts.out);
    check_format(jump_opts.format);
    JumpSymbolSpec spec;
    spec.t0 = parse_angle(jump_opts.t0);
    spec.delta = jump_opts.delta;
    spec.taper_width = jump_opts.taper_width;
    try {
      validate(spec);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    if (jump_opts.format == "json") {
      const VerdictReport rep = verdict(spec);
      const json j{{"spec",
                    {{"t0", spec.t0},
                     {"delta", spec.delta},
                     {"taper_width", spec.taper_width}}},
                   {"report", to_json(rep)}};
      write_json_file(jump_opts.out, j);
    } else {
      if (!(jump_opts.tol > 0.0)) throw ConfigError("--tol must be positive");
      const std::vector<double> offsets = parse_angle_list(jump_opts.offsets);
      for (double s : offsets)
        if (!(s > 0.0 && s < 1.0))
          throw ConfigError("offsets must lie in (0, 1)");
      CsvWriter csv(jump_opts.out);
      csv.row({"offset", "t", "conj", "exp_conj", "envelope", "c"});
      for (double s : offsets) {
        for (double sgn : {1.0, -1.0}) {
          const double t = spec.t0 + sgn * s;
          const double conj = jump_conjugate(spec, t, jump_opts.tol);
          const double env = 1.0 / (s * std::pow(std::log(s), 2));
          csv.numeric_row(
              {sgn * s, t, conj, std::exp(conj), env, std::exp(conj) / env});
        }
      }
    }
    note_written(jump_opts.out);
  };
  contexts.push_back(&jump_ctx);

  // ---- outer ----
  SubCtx outer_ctx;
  struct {
    std::string symbol, radii = "0,0.2,0.5,0.8,0.95,0.999", out, format = "csv";
    double p = 2.0;
  } outer_opts;
  outer_ctx.cmd =
      app.add_subcommand("outer", "Hardy integral means of the outer function");
  outer_ctx.module = "poisson_herglotz";
  bind_string(outer_ctx, "symbol", outer_opts.symbol, "symbol JSON (inline or file)");
  bind_double(outer_ctx, "p", outer_opts.p, "Hardy exponent, > 0");
  bind_string(outer_ctx, "radii", outer_opts.radii, "comma-separated radii");
  bind_string(outer_ctx, "format", outer_opts.format, "csv or json");
  bind_string(outer_ctx, "out", outer_opts.out, "output path");
  bind_selftest(outer_ctx);
  outer_ctx.run = [&]() {
    require_out(outer_opts.out);
    check_format(outer_opts.format);
    const StepSymbol f = load_symbol(outer_opts.symbol);
    if (!(outer_opts.p > 0.0)) throw ConfigError("--p must be positive");
    const std::vector<double> radii = parse_angle_list(outer_opts.radii);
    for (double r : radii)
      if (!(r >= 0.0 && r <= 1.0 - 1e-5))
        throw ConfigError("radii must lie in [0, 1 - 1e-5]");
    const HardyGrowthCurve curve = hardy_growth(f, outer_opts.p, radii);
    if (outer_opts.format == "csv") {
      CsvWriter csv(outer_opts.out);
      csv.row({"r", "mean"});
      for (std::size_t i = 0; i < curve.radii.size(); ++i)
        csv.numeric_row({curve.radii[i], curve.means[i]});
    } else {
      write_json_file(outer_opts.out, to_json(curve));
    }
    note_written(outer_opts.out);
  };
  contexts.push_back(&outer_ctx);

  // ---- gap ----
  SubCtx gap_ctx;
  struct {
    std::string symbol, arcs, out;
  } gap_opts;
  gap_ctx.cmd = app.add_subcommand(
      "gap", "essential-range analysis of a symbol, optionally times rho_E");
  gap_ctx.module = "circle_fn";
  bind_string(gap_ctx, "symbol", gap_opts.symbol, "symbol JSON (inline or file)");
  bind_string(gap_ctx, "arcs", gap_opts.arcs,
              "optional arc set: analyze f * rho_E instead of f");
  bind_string(gap_ctx, "out", gap_opts.out, "output JSON path");
  bind_selftest(gap_ctx);
  gap_ctx.run = [&]() {
    require_out(gap_opts.out);
    StepSymbol fe = load_symbol(gap_opts.symbol);
    if (!gap_opts.arcs.empty()) fe = scale_symbol(fe, rho(load_arcs(gap_opts.arcs)));
    double vmin = fe.values().front(), vmax = vmin, min_abs = std::abs(vmin);
    for (double v : fe.values()) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
      min_abs = std::min(min_abs, std::abs(v));
    }
    const json j{{"symbol", to_json(fe)},
                 {"range_gap", essential_range_gap(fe)},
                 {"range_diameter", vmax - vmin},
                 {"min_abs_value", min_abs},
                 {"max_jump", fe.max_abs_jump()},
                 {"sup_norm", fe.sup_norm()},
                 {"mean", fe.mean()}};
    write_json_file(gap_opts.out, j);
    note_written(gap_opts.out);
  };
  contexts.push_back(&gap_ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  SubCtx* active = nullptr;
  for (SubCtx* c : contexts)
    if (c->cmd->parsed()) active = c;

  if (!config_path.empty()) {
    const json config = parse_json_text(read_file(config_path), "config");
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (config.contains("subcommand")) {
      if (!config["subcommand"].is_string())
        throw ConfigError("config subcommand must be a string");
      const std::string name = config["subcommand"].get<std::string>();
      SubCtx* named = nullptr;
      for (SubCtx* c : contexts)
        if (c->cmd->get_name() == name) named = c;
      if (!named) throw ConfigError("unknown subcommand in config: " + name);
      if (active && active != named)
        throw ConfigError("config subcommand '" + name +
                          "' conflicts with the command line");
      active = named;
    }
    if (!active)
      throw ConfigError("config gives options but no subcommand is selected");
    for (const auto& [key, value] : config.items()) {
      if (key == "subcommand") continue;
      const auto it = active->bindings.find(key);
      if (it == active->bindings.end())
        throw ConfigError("unknown config field: " + key);
      if (it->second.opt->count() == 0) it->second.apply(value);
    }
  }

  if (!active) {
    if (app_selftest) return report_selftests(selftest_all());
    throw ConfigError("no subcommand given; see --help");
  }
  if (active->selftest || app_selftest)
    return report_selftests(run_selftests(active->module));
  active->run();
  return 0;
}

int fail(const char* type, const std::string& message, int code) {
  const json j{{"error", {{"type", type}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const conjlab::ConfigError& e) {
    return fail("ConfigError", e.what(), 2);
  } catch (const conjlab::Error& e) {
    return fail("ComputeError", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("ComputeError", e.what(), 3);
  }
}
