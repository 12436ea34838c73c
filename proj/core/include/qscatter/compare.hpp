#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qscatter/model.hpp"

namespace qscatter {

// Regularization of the pulse-distance metric: the integral runs over
// [0, window_factor / min(gamma_e, gamma_p)] and the denominator magnitude is
// clamped below denom_floor * max_t |V_cl + V_q| (the raw integrand is 0/0 at
// t = 0 and the raw integral diverges whenever the envelopes' tails differ).
// The default floor also bounds the integrand spikes where an oscillating
// strongly driven classical field crosses the quantum one in anti-phase;
// floors below ~0.05 let those spikes dominate rate-grid sweeps.
struct EpsilonConfig {
  double window_factor = 10.0;
  double denom_floor = 0.09;

  double window(const RateSet& rates) const { return window_factor / rates.min_decay(); }
  void validate() const;
};

struct EpsilonResult {
  double value = 0.0;
  double clamped_fraction = 0.0;  // fraction of window samples hit by the clamp
  bool ill_conditioned = false;   // clamped_fraction > 0.10
};

// eps = sqrt( int_0^T (V_cl - V_q)^2 / (V_cl + V_q)^2 dt ), trapezoid rule on
// the shared grid, real quadratures of resonant envelopes. The t = 0 integrand
// is linearly extrapolated from the first two interior samples.
EpsilonResult epsilon(const ComplexEnvelope& v_cl, const ComplexEnvelope& v_q,
                      const RateSet& rates, const EpsilonConfig& cfg);

struct MinimizeResult {
  double x = 0.0;
  double fx = 0.0;
  // Every (x, f(x)) evaluation made, in evaluation order.
  std::vector<std::pair<double, double>> profile;
};

// Golden-section minimization of f on [lo, hi], terminating when the bracket
// width falls under tol. Validates unimodality at the geometric midpoint and
// geometrically expands the bracket up to 8x before giving up with an
// OptimizationError carrying the sampled profile.
MinimizeResult bracketed_minimize(const std::function<double(double)>& f, double lo,
                                  double hi, double tol);

struct ComparisonResult {
  double omega_star = 0.0;          // rad/us
  double epsilon = 0.0;             // metric at omega_star
  double epsilon_normalized = 0.0;  // epsilon / max epsilon seen while optimizing
  bool converged = false;
  ComplexEnvelope classical_curve;  // total detected envelope at omega_star
  ComplexEnvelope quantum_curve;    // fixed quantum reference (total), same grid
};

// Default search bracket (0.05 sqrt(ge gp), 3 sqrt(ge gp)).
std::pair<double, double> default_bracket(const RateSet& rates);

// Minimizes epsilon(omega0) for the classical pulse against the resonant
// quantum reference, both as total detected envelopes (incoming plus
// scattered, scale 1) on a [0, T] grid with `grid_points` samples.
// Deterministic: pure function evaluations only.
ComparisonResult optimize_omega(const RateSet& rates, const EpsilonConfig& cfg,
                                std::pair<double, double> bracket, double tol,
                                int grid_points = 1601);

// epsilon(omega0) sampled at n uniformly spaced points across [lo, hi].
std::vector<std::pair<double, double>> scan_omega(const RateSet& rates,
                                                  const EpsilonConfig& cfg, double lo,
                                                  double hi, int n, int grid_points = 1601);

struct RateGridResult {
  std::vector<double> gamma_e_values;
  std::vector<double> gamma_p_values;
  // eps_norm[i][j] for (gamma_e_values[i], gamma_p_values[j]), scaled to max 1.
  std::vector<std::vector<double>> eps_norm;
  double eps_max = 0.0;
};

// Fixed-drive distance map over an (emitter rate x probe rate) grid,
// normalized by its maximum. Parallelized per grid point.
RateGridResult rate_grid_sweep(const std::vector<double>& gamma_e_values,
                               const std::vector<double>& gamma_p_values, double omega0,
                               const EpsilonConfig& cfg, int grid_points = 801);

struct OptimalCurvePoint {
  double ratio = 0.0;             // gamma_e / gamma_p
  double omega_star = 0.0;        // rad/us
  double eps_min = 0.0;
  double eps_min_normalized = 0.0;
  bool converged = false;
};

// Optimized drive and minimal distance per rate ratio (probe rate fixed).
// Points that fail to optimize are flagged, not fatal. Parallelized per ratio.
std::vector<OptimalCurvePoint> optimal_curve(const std::vector<double>& ratios,
                                             double gamma_p_fixed, const EpsilonConfig& cfg,
                                             double tol_factor = 1e-3, int grid_points = 1601);

// Reference shape 2r/(r+1) plotted alongside the optimal curve (the harmonic
// mean of the two rates over the probe rate, as a function of their ratio).
double harmonic_mean_ratio(double r);

}  // namespace qscatter
