#include "qscatter/compare.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qscatter/classical.hpp"
#include "qscatter/parallel.hpp"
#include "qscatter/quantum.hpp"

namespace qscatter {

void EpsilonConfig::validate() const {
  if (!(window_factor > 0.0) || !std::isfinite(window_factor))
    throw ValidationError("window_factor", "must be > 0 and finite");
  if (!(denom_floor > 0.0) || !(denom_floor < 1.0))
    throw ValidationError("denom_floor", "must be in (0, 1)");
}

EpsilonResult epsilon(const ComplexEnvelope& v_cl, const ComplexEnvelope& v_q,
                      const RateSet& rates, const EpsilonConfig& cfg) {
  cfg.validate();
  if (v_cl.grid != v_q.grid) throw ShapeError("epsilon: envelopes on different grids");
  const double t_window = cfg.window(rates);
  if (v_cl.grid.t_max() < t_window * (1.0 - 1e-9))
    throw ValidationError("t_max", "grid must span the epsilon window " +
                                       std::to_string(t_window));

  // Last sample inside the window.
  int i_end = v_cl.grid.size() - 1;
  while (i_end > 0 && v_cl.grid.t(i_end) > t_window * (1.0 + 1e-12)) --i_end;
  if (i_end < 2) throw ValidationError("n_points", "epsilon needs >= 3 samples in window");

  double denom_max = 0.0, num_max = 0.0;
  for (int i = 0; i <= i_end; ++i) {
    const double a = v_cl.samples[static_cast<size_t>(i)].real();
    const double b = v_q.samples[static_cast<size_t>(i)].real();
    denom_max = std::max(denom_max, std::abs(a + b));
    num_max = std::max(num_max, std::abs(a - b));
  }
  if (num_max == 0.0) return {0.0, 0.0, false};
  const double floor = cfg.denom_floor * (denom_max > 0.0 ? denom_max : num_max);

  std::vector<double> u(static_cast<size_t>(i_end) + 1);
  long clamped = 0;
  for (int i = 1; i <= i_end; ++i) {
    const double a = v_cl.samples[static_cast<size_t>(i)].real();
    const double b = v_q.samples[static_cast<size_t>(i)].real();
    double d = std::abs(a + b);
    if (d < floor) {
      d = floor;
      ++clamped;
    }
    const double q = (a - b) / d;
    u[static_cast<size_t>(i)] = q * q;
  }
  // 0/0 at t = 0: take the linear extrapolation of the first interior samples.
  u[0] = std::max(0.0, 2.0 * u[1] - u[2]);

  const double dt = v_cl.grid.dt();
  double integral = 0.0;
  for (int i = 0; i < i_end; ++i)
    integral += 0.5 * (u[static_cast<size_t>(i)] + u[static_cast<size_t>(i) + 1]) * dt;

  EpsilonResult res;
  res.value = std::sqrt(integral);
  res.clamped_fraction = static_cast<double>(clamped) / static_cast<double>(i_end);
  res.ill_conditioned = res.clamped_fraction > 0.10;
  return res;
}

MinimizeResult bracketed_minimize(const std::function<double(double)>& f, double lo,
                                  double hi, double tol) {
  if (!(lo < hi)) throw ValidationError("bracket", "requires lo < hi");
  if (!(tol > 0.0)) throw ValidationError("tol", "must be > 0");

  MinimizeResult result;
  auto eval = [&](double x) {
    const double fx = f(x);
    result.profile.emplace_back(x, fx);
    return fx;
  };

  // The bracket must contain a minimum: the midpoint has to beat both ends.
  // Expand geometrically (up to 8x each way) when it does not.
  double f_lo = eval(lo), f_hi = eval(hi);
  double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
  double f_mid = eval(mid);
  for (int attempt = 0; f_mid >= f_lo || f_mid >= f_hi; ++attempt) {
    if (attempt >= 3)
      throw OptimizationError("no interior minimum in bracket after 8x expansion",
                              result.profile);
    lo /= 2.0;
    hi *= 2.0;
    f_lo = eval(lo);
    f_hi = eval(hi);
    mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    f_mid = eval(mid);
  }

  constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = eval(x2);
    }
  }
  result.x = 0.5 * (a + b);
  result.fx = eval(result.x);
  return result;
}

std::pair<double, double> default_bracket(const RateSet& rates) {
  const double g = std::sqrt(rates.gamma_e * rates.gamma_p);
  return {0.05 * g, 3.0 * g};
}

namespace {

// Both sides of the metric are total detected envelopes: the incoming pulse
// plus the scattered response. Comparing scattered parts alone biases the
// optimum above sqrt(gamma_e gamma_p) (the weak-drive classical field equals
// the quantum one there exactly, and saturation only subtracts), while the
// incoming terms anchor the amplitude scale on both sides.
ComplexEnvelope quantum_reference(const RateSet& rates, const TimeGrid& grid) {
  return quantum_closed_form(rates, DriveSpec{0.0, 0.0, Complex(1.0, 0.0)}, grid,
                             /*scattered_only=*/false);
}

ComplexEnvelope classical_total(double omega0, const RateSet& rates,
                                const TimeGrid& grid) {
  DriveSpec drive{omega0, 0.0, Complex(1.0, 0.0)};
  ComplexEnvelope total = evolve_bloch(rates, drive, grid).envelope;
  const ComplexEnvelope in = incoming_field(rates, drive, grid);
  for (size_t i = 0; i < total.samples.size(); ++i) total.samples[i] += in.samples[i];
  return total;
}

double epsilon_at(double omega0, const RateSet& rates, const EpsilonConfig& cfg,
                  const ComplexEnvelope& reference, const TimeGrid& grid) {
  return epsilon(classical_total(omega0, rates, grid), reference, rates, cfg).value;
}

}  // namespace

ComparisonResult optimize_omega(const RateSet& rates, const EpsilonConfig& cfg,
                                std::pair<double, double> bracket, double tol,
                                int grid_points) {
  rates.validate();
  cfg.validate();
  if (!(bracket.first > 0.0) || !(bracket.first < bracket.second))
    throw ValidationError("bracket", "requires 0 < lo < hi");

  const TimeGrid grid(cfg.window(rates), grid_points);
  const ComplexEnvelope reference = quantum_reference(rates, grid);
  auto f = [&](double omega0) { return epsilon_at(omega0, rates, cfg, reference, grid); };

  MinimizeResult best = bracketed_minimize(f, bracket.first, bracket.second, tol);

  double eps_max = 0.0;
  for (const auto& [x, fx] : best.profile) eps_max = std::max(eps_max, fx);

  ComparisonResult result{best.x,
                          best.fx,
                          eps_max > 0.0 ? best.fx / eps_max : 0.0,
                          true,
                          classical_total(best.x, rates, grid),
                          reference};
  return result;
}

std::vector<std::pair<double, double>> scan_omega(const RateSet& rates,
                                                  const EpsilonConfig& cfg, double lo,
                                                  double hi, int n, int grid_points) {
  if (n < 2) throw ValidationError("n", "must be >= 2");
  if (!(lo > 0.0) || !(lo < hi)) throw ValidationError("bracket", "requires 0 < lo < hi");
  const TimeGrid grid(cfg.window(rates), grid_points);
  const ComplexEnvelope reference = quantum_reference(rates, grid);

  std::vector<std::pair<double, double>> out(static_cast<size_t>(n));
  parallel_for(static_cast<size_t>(n), [&](size_t k) {
    const double omega0 = lo + (hi - lo) * static_cast<double>(k) / (n - 1);
    out[k] = {omega0, epsilon_at(omega0, rates, cfg, reference, grid)};
  });
  return out;
}

RateGridResult rate_grid_sweep(const std::vector<double>& gamma_e_values,
                               const std::vector<double>& gamma_p_values, double omega0,
                               const EpsilonConfig& cfg, int grid_points) {
  if (gamma_e_values.empty() || gamma_p_values.empty())
    throw ValidationError("grid", "rate grids must be non-empty");
  cfg.validate();

  const size_t rows = gamma_e_values.size(), cols = gamma_p_values.size();
  RateGridResult result;
  result.gamma_e_values = gamma_e_values;
  result.gamma_p_values = gamma_p_values;
  result.eps_norm.assign(rows, std::vector<double>(cols, 0.0));

  parallel_for(rows * cols, [&](size_t k) {
    const size_t i = k / cols, j = k % cols;
    const RateSet rates = RateSet::radiative(gamma_e_values[i], gamma_p_values[j]);
    const TimeGrid grid(cfg.window(rates), grid_points);
    const ComplexEnvelope reference = quantum_reference(rates, grid);
    result.eps_norm[i][j] = epsilon_at(omega0, rates, cfg, reference, grid);
  });

  for (const auto& row : result.eps_norm)
    for (double v : row) result.eps_max = std::max(result.eps_max, v);
  if (result.eps_max > 0.0)
    for (auto& row : result.eps_norm)
      for (double& v : row) v /= result.eps_max;
  return result;
}

std::vector<OptimalCurvePoint> optimal_curve(const std::vector<double>& ratios,
                                             double gamma_p_fixed, const EpsilonConfig& cfg,
                                             double tol_factor, int grid_points) {
  if (ratios.empty()) throw ValidationError("ratios", "must be non-empty");
  if (!(gamma_p_fixed > 0.0)) throw ValidationError("gamma_p", "must be > 0");
  if (!(tol_factor > 0.0)) throw ValidationError("tol", "must be > 0");
  cfg.validate();

  std::vector<OptimalCurvePoint> out(ratios.size());
  parallel_for(ratios.size(), [&](size_t k) {
    const double r = ratios[k];
    OptimalCurvePoint& p = out[k];
    p.ratio = r;
    if (!(r > 0.0)) return;  // flagged unconverged
    const RateSet rates = RateSet::radiative(r * gamma_p_fixed, gamma_p_fixed);
    const double tol = tol_factor * std::sqrt(rates.gamma_e * rates.gamma_p);
    try {
      ComparisonResult res =
          optimize_omega(rates, cfg, default_bracket(rates), tol, grid_points);
      p.omega_star = res.omega_star;
      p.eps_min = res.epsilon;
      p.converged = true;
    } catch (const Error&) {
      // leave the point flagged; sweeps keep going
    }
  });

  double eps_max = 0.0;
  for (const OptimalCurvePoint& p : out)
    if (p.converged) eps_max = std::max(eps_max, p.eps_min);
  for (OptimalCurvePoint& p : out)
    p.eps_min_normalized = (p.converged && eps_max > 0.0) ? p.eps_min / eps_max : 0.0;
  return out;
}

double harmonic_mean_ratio(double r) { return 2.0 * r / (r + 1.0); }

}  // namespace qscatter
