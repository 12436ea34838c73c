#include "qscatter/quantum.hpp"

#include <array>
#include <cmath>

#include "exp_ratio.hpp"
#include "qscatter/ode.hpp"

namespace qscatter {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

ComplexEnvelope emitter_envelope(const RateSet& rates, const TimeGrid& grid) {
  const double amp = std::sqrt(rates.gamma_e) / 2.0;
  std::vector<Complex> s(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i)
    s[static_cast<size_t>(i)] = Complex(amp * std::exp(-rates.gamma2_e * grid.t(i)), 0.0);
  return ComplexEnvelope(grid, std::move(s));
}

SinglePhotonAmplitudes amplitude_rhs(const SinglePhotonAmplitudes& s, double t,
                                     const RateSet& rates, double delta) {
  const double g = std::sqrt(rates.gamma_p * rates.gamma_e / 2.0) / 2.0;
  const Complex phase = std::exp(Complex(0.0, -delta * t));
  SinglePhotonAmplitudes d;
  d.zeta = Complex(0.0, 0.0);
  d.alpha1 = -(rates.gamma_e / 2.0) * s.alpha1;
  d.alpha2 = -(rates.gamma_p / 2.0) * s.alpha2 - g * phase * s.alpha1;
  return d;
}

AmplitudeTrajectory solve_amplitudes(const RateSet& rates, double delta, const TimeGrid& grid,
                                     double rel_tol) {
  // zeta is conserved; integrate (alpha1, alpha2) as 4 reals.
  const Complex zeta(kInvSqrt2, 0.0);
  const std::array<double, 4> y0 = {kInvSqrt2, 0.0, 0.0, 0.0};
  auto rhs = [&](double t, const std::array<double, 4>& y, std::array<double, 4>& dy) {
    SinglePhotonAmplitudes s{zeta, Complex(y[0], y[1]), Complex(y[2], y[3])};
    SinglePhotonAmplitudes d = amplitude_rhs(s, t, rates, delta);
    dy[0] = d.alpha1.real();
    dy[1] = d.alpha1.imag();
    dy[2] = d.alpha2.real();
    dy[3] = d.alpha2.imag();
  };
  auto ys = integrate_at<4>(rhs, y0, grid.times(), rel_tol);

  AmplitudeTrajectory traj{grid, {}};
  traj.states.reserve(ys.size());
  for (const auto& y : ys)
    traj.states.push_back({zeta, Complex(y[0], y[1]), Complex(y[2], y[3])});
  return traj;
}

ComplexEnvelope vq_from_amplitudes(const AmplitudeTrajectory& traj, const RateSet& rates,
                                   double delta, Complex scale, bool scattered_only) {
  const double probe_w = std::sqrt(rates.gamma_p / 2.0) * std::sqrt(2.0);
  const double emitter_w = std::sqrt(rates.gamma_e);
  std::vector<Complex> s(traj.states.size());
  for (size_t i = 0; i < traj.states.size(); ++i) {
    const double t = traj.grid.t(static_cast<int>(i));
    const SinglePhotonAmplitudes& a = traj.states[i];
    Complex v = probe_w * a.alpha2 * std::exp(Complex(0.0, delta * t));
    if (!scattered_only) v += emitter_w * std::conj(a.zeta) * a.alpha1;
    s[i] = scale * v;
  }
  return ComplexEnvelope(traj.grid, std::move(s));
}

ComplexEnvelope quantum_closed_form(const RateSet& rates, const DriveSpec& drive,
                                    const TimeGrid& grid, bool scattered_only) {
  const double ge = rates.gamma_e, gp = rates.gamma_p;
  const double delta = drive.detuning;
  const Complex l1(-rates.gamma2_e, 0.0);
  const Complex l2(-rates.gamma2_p, delta);
  const Complex denom(ge - gp, 2.0 * delta);
  const double amp = std::sqrt(gp / 2.0) * std::sqrt(ge * gp);
  const double emitter_amp = std::sqrt(ge) / 2.0;

  // denom == -2 (l1 - l2) whenever the coherence rates sit at the radiative
  // limit; route the near-singular band through the series-expanded ratio.
  const double tol = 0.5e-9 * (ge + gp);

  std::vector<Complex> s(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.t(i);
    Complex ratio;
    if (std::abs(denom) < 2.0 * tol) {
      ratio = -0.5 * detail::exp_diff_ratio(l1, l2, t, 1e300);  // forced series branch
    } else {
      ratio = (std::exp(l1 * t) - std::exp(l2 * t)) / denom;
    }
    Complex v = amp * ratio;
    if (!scattered_only) v += emitter_amp * std::exp(-rates.gamma2_e * t);
    s[static_cast<size_t>(i)] = drive.scale * v;
  }
  return ComplexEnvelope(grid, std::move(s));
}

std::vector<ComplexEnvelope> detuning_sweep(const RateSet& rates,
                                            const std::vector<double>& detunings,
                                            const TimeGrid& grid, Complex scale) {
  std::vector<ComplexEnvelope> out;
  out.reserve(detunings.size());
  for (double d : detunings) {
    DriveSpec drive{0.0, d, scale};
    out.push_back(quantum_closed_form(rates, drive, grid, /*scattered_only=*/false));
  }
  return out;
}

}  // namespace qscatter
