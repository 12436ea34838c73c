#pragma once

#include <vector>

#include "qscatter/exp_poly.hpp"
#include "qscatter/model.hpp"

namespace qscatter {

struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

// Optical Bloch equations for the probe under the exponentially decaying
// drive Omega(t) = omega0 * e^{-gamma2_e t}, detuned by `detuning`:
//   x' = -detuning y - (gamma_p/2) x
//   y' =  detuning x - Omega(t) z - (gamma_p/2) y
//   z' = -gamma_p (1 + z) + Omega(t) y
BlochState bloch_rhs(const BlochState& s, double t, const RateSet& rates,
                     const DriveSpec& drive);

struct BlochResult {
  TimeGrid grid;
  std::vector<BlochState> states;
  ComplexEnvelope envelope;

  // sigma_y in the radiated-field orientation (initial slope -omega0), the
  // convention every reported envelope and the second-order ODE live in.
  std::vector<double> sigma_y_field() const;
};

// Integrates from (0, 0, -1) and assembles the scattered envelope
// V_cl(t) = -scale sqrt(gamma_p/2) (y + i x)/2, which reduces to the
// first-order closed form in the weak-drive limit (the sign orients the
// scattered field against the incoming drive, as destructive interference
// requires).
BlochResult evolve_bloch(const RateSet& rates, const DriveSpec& drive, const TimeGrid& grid,
                         double rel_tol = 1e-10);

// Weak-drive closed form, resonant drive only:
//   V1(t) = scale sqrt(gamma_p/2) omega0 (e^{-gamma2_e t} - e^{-gamma_p t/2})
//           / (2 gamma2_e - gamma_p),
// with the continuous -(t/2) e^{-gamma_p t/2} limit when the denominator is
// within 1e-9 (2 gamma2_e + gamma_p) of zero.
ComplexEnvelope first_order_field(const RateSet& rates, const DriveSpec& drive,
                                  const TimeGrid& grid);

// The coherent drive's own contribution to the detected quadrature,
//   V_in(t) = scale omega0 e^{-gamma2_e t} / (2 sqrt(gamma_p)),
// normalized so that at omega0 = sqrt(gamma_e gamma_p) (radiative limit) it
// coincides with the emitter term of the quantum detected field. Add to the
// scattered envelope to form the total detected field.
ComplexEnvelope incoming_field(const RateSet& rates, const DriveSpec& drive,
                               const TimeGrid& grid);

// Cubic-in-omega0 correction, resonant radiative-limited case, transcribed
// closed form; throws DegenerateParameterError near its parameter poles
// (|gamma_e - gamma_p|, |3 gamma_e - gamma_p| or gamma_e under
// 1e-9 (gamma_e + gamma_p)). Use series_sum for degenerate rates instead.
ComplexEnvelope third_order_field(const RateSet& rates, const DriveSpec& drive,
                                  const TimeGrid& grid);

// Exact per-order corrections (y(n), z(n)) of the drive-amplitude expansion
//   sigma_y(t) = e^{-gamma_p t/2} sum_n omega0^n y(n)(t),
//   sigma_z(t) = z(0) + sum_{n>=1} omega0^n z(n)(t),
// generated by the recurrence
//   y(n)' = e^{(gamma_p/2 - gamma2_e) t} z(n-1),
//   z(n)' = -gamma_p z(n) - e^{-(gamma_p/2 + gamma2_e) t} y(n-1),
// from z(0) = -1, y(0) = 0, with y(n)(0) = z(n)(0) = 0 for n >= 1.
// y(n) vanishes identically for even n, z(n) for odd n.
struct SeriesCorrection {
  int order = 0;
  ExpPoly sigma_y;
  ExpPoly sigma_z;
};

SeriesCorrection series_correction(int n, const RateSet& rates);

// Partial sum of the scattered field through order n_max:
//   V(t) = scale sqrt(gamma_p/2) (1/2) e^{-gamma_p t/2}
//          sum_{n=1..n_max} omega0^n y(n)(t).
// Resonant drive only.
ComplexEnvelope series_sum(int n_max, const RateSet& rates, const DriveSpec& drive,
                           const TimeGrid& grid);

// Max absolute residual of the second-order field equation
//   4 gamma_p Omega + e^{gamma_e t/2} (4 y'' + 2(gamma_e + 3 gamma_p) y'
//   + gamma_p (gamma_e + 2 gamma_p) y) + 4 Omega^2 e^{-gamma_e t/2} y = 0
// along a sampled trajectory, derivatives by central differences on interior
// points. `y` must be in the radiated-field orientation (y'(0) = -omega0),
// see BlochResult::sigma_y_field(). Throws ResolutionError when the grid is
// too coarse for the stencil.
double second_order_ode_residual(const std::vector<double>& y_traj, const RateSet& rates,
                                 const DriveSpec& drive, const TimeGrid& grid);

}  // namespace qscatter
