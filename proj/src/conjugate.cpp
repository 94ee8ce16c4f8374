#include "conjlab/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <fftw3.h>

#include "conjlab/errors.hpp"

namespace conjlab {

TrigPoly conjugate_multiplier(const TrigPoly& f) {
  TrigPoly out = TrigPoly::zero(f.degree());
  const std::complex<double> neg_i(0.0, -1.0);
  for (int n = 1; n <= f.degree(); ++n) {
    out.set_coeff(n, neg_i * f.coeff(n));
    out.set_coeff(-n, -neg_i * f.coeff(-n));
  }
  return out;
}

std::vector<double> conjugate_grid(const SampledFn& f) {
  if (!std::holds_alternative<CircleGrid>(f.grid))
    throw GridNotUniformError("conjugate_grid: needs a uniform grid");
  const CircleGrid& grid = std::get<CircleGrid>(f.grid);
  if (!grid.is_power_of_two())
    throw GridNotUniformError("conjugate_grid: grid size must be a power of two");
  const std::size_t n = grid.size();
  if (f.values.size() != n)
    throw DomainError("conjugate_grid: value count does not match grid");

  std::vector<std::complex<double>> buf(n);
  for (std::size_t j = 0; j < n; ++j) buf[j] = f.values[j];

  fftw_complex* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan fwd = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_FORWARD,
                                   FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);

  // Bin k carries frequency m = k below n/2 and m = k - n above; the
  // multiplier is -i sgn(m). The Nyquist bin has no signed frequency.
  buf[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (2 * k == n) {
      buf[k] = 0.0;
    } else {
      buf[k] *= std::complex<double>(0.0, 2 * k < n ? -1.0 : 1.0);
    }
  }

  fftw_plan bwd = fftw_plan_dft_1d(static_cast<int>(n), data, data, FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);

  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].real() * scale;
  return out;
}

namespace {

const CircleGrid& uniform_grid_of(const SampledFn& f, const char* who) {
  if (!std::holds_alternative<CircleGrid>(f.grid))
    throw GridNotUniformError(std::string(who) + ": needs a uniform grid");
  const CircleGrid& grid = std::get<CircleGrid>(f.grid);
  if (f.values.size() != grid.size())
    throw DomainError(std::string(who) + ": value count does not match grid");
  return grid;
}

double kahan_add(double& acc, double& comp, double term) {
  const double y = term - comp;
  const double s = acc + y;
  comp = (s - acc) - y;
  acc = s;
  return acc;
}

}  // namespace

double conjugate_pv(const SampledFn& f, double t) {
  const CircleGrid& grid = uniform_grid_of(f, "conjugate_pv");
  const std::size_t n = grid.size();
  double acc = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double node = grid.node(j);
    if (circle_distance(t, node) <= 1e-12)
      throw SingularNodeError("conjugate_pv: t collides with node " +
                              std::to_string(j));
    kahan_add(acc, comp, f.values[j] / std::tan(0.5 * (t - node)));
  }
  return acc / static_cast<double>(n);
}

double conjugate_pv(const SampledFn& f, double t, double f_at_t) {
  const CircleGrid& grid = uniform_grid_of(f, "conjugate_pv");
  const std::size_t n = grid.size();
  double acc = 0.0, comp = 0.0;
  bool on_node = false;
  for (std::size_t j = 0; j < n; ++j) {
    const double node = grid.node(j);
    if (circle_distance(t, node) <= 1e-12) {
      on_node = true;  // removable term: f_j - f(t) vanishes with the pole
      continue;
    }
    kahan_add(acc, comp, (f.values[j] - f_at_t) / std::tan(0.5 * (t - node)));
  }
  // sum_j cot((t - theta_j)/2) = n cot(n (t - theta_0)/2) restores the
  // subtracted constant. On a node the symmetric sum is exactly zero.
  double lattice = 0.0;
  if (!on_node) {
    const double phase = 0.5 * static_cast<double>(n) * (t - grid.node(0));
    lattice = f_at_t * static_cast<double>(n) * (std::cos(phase) / std::sin(phase));
  }
  return (acc + lattice) / static_cast<double>(n);
}

std::vector<double> midpoint_angles(const CircleGrid& grid) {
  const double shift =
      grid.offset() < 0.5 ? grid.offset() + 0.5 : grid.offset() - 0.5;
  return CircleGrid(grid.size(), shift).nodes();
}

std::vector<double> conjugate_pv_midpoints(const SampledFn& f) {
  const CircleGrid& grid = uniform_grid_of(f, "conjugate_pv_midpoints");
  const std::size_t n = grid.size();
  const std::vector<double> mids = midpoint_angles(grid);
  // out_i = (1/n) sum_j f_j cot((t_i - theta_j)/2) depends on i - j only,
  // so it is the circular convolution of f with the cotangent kernel.
  std::vector<std::complex<double>> fv(n), kv(n);
  for (std::size_t j = 0; j < n; ++j) {
    fv[j] = f.values[j];
    kv[j] = 1.0 / std::tan(0.5 * (mids[j] - grid.node(0)));
  }
  fftw_plan pf = fftw_plan_dft_1d(static_cast<int>(n),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(pf);
  fftw_execute_dft(pf, reinterpret_cast<fftw_complex*>(kv.data()),
                   reinterpret_cast<fftw_complex*>(kv.data()));
  fftw_destroy_plan(pf);
  for (std::size_t k = 0; k < n; ++k) fv[k] *= kv[k];
  fftw_plan pb = fftw_plan_dft_1d(static_cast<int>(n),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(pb);
  fftw_destroy_plan(pb);
  std::vector<double> out(n);
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) out[i] = fv[i].real() * scale;
  return out;
}

std::vector<double> conjugate_pv_nodes(const SampledFn& f) {
  const CircleGrid& grid = uniform_grid_of(f, "conjugate_pv_nodes");
  const std::size_t n = grid.size();
  // out_i = (1/n) sum_{j != i} f_j cot(pi (i - j)/n); the f(t) subtraction
  // contributes nothing because the remaining cotangents cancel in pairs.
  std::vector<std::complex<double>> fv(n), kv(n);
  kv[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    fv[j] = f.values[j];
    if (j > 0) kv[j] = 1.0 / std::tan(kPi * static_cast<double>(j) /
                                      static_cast<double>(n));
  }
  fftw_plan pf = fftw_plan_dft_1d(static_cast<int>(n),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(pf);
  fftw_execute_dft(pf, reinterpret_cast<fftw_complex*>(kv.data()),
                   reinterpret_cast<fftw_complex*>(kv.data()));
  fftw_destroy_plan(pf);
  for (std::size_t k = 0; k < n; ++k) fv[k] *= kv[k];
  fftw_plan pb = fftw_plan_dft_1d(static_cast<int>(n),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  reinterpret_cast<fftw_complex*>(fv.data()),
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(pb);
  fftw_destroy_plan(pb);
  std::vector<double> out(n);
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) out[i] = fv[i].real() * scale;
  return out;
}

double conjugate_step_exact(const StepSymbol& f, double t) {
  const std::vector<double>& bp = f.breakpoints();
  const std::vector<double> jumps = f.jump_heights();
  double acc = 0.0;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (jumps[i] == 0.0) continue;
    if (circle_distance(t, bp[i]) <= 1e-15)
      throw AtBreakpointError("conjugate_step_exact: t at a jump of the symbol");
    acc += jumps[i] * std::log(std::abs(std::sin(0.5 * (t - bp[i]))));
  }
  return acc / kPi;
}

std::vector<double> conjugate_step_exact(const StepSymbol& f,
                                         const std::vector<double>& ts) {
  std::vector<double> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = conjugate_step_exact(f, ts[i]);
  return out;
}

ConjugationReport cross_check(const TrigPoly& f, const CircleGrid& grid) {
  ConjugationReport rep;
  rep.n = grid.size();
  const SampledFn samples = sample(f, grid);
  const std::vector<double> by_fft = conjugate_grid(samples);
  const TrigPoly conj = conjugate_multiplier(f);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double exact = conj.eval_real(grid.node(j));
    const double pv = conjugate_pv(samples, grid.node(j), samples.values[j]);
    rep.max_fft_vs_exact = std::max(rep.max_fft_vs_exact, std::abs(by_fft[j] - exact));
    rep.max_pv_vs_exact = std::max(rep.max_pv_vs_exact, std::abs(pv - exact));
    rep.max_fft_vs_pv = std::max(rep.max_fft_vs_pv, std::abs(by_fft[j] - pv));
  }
  return rep;
}

}  // namespace conjlab
