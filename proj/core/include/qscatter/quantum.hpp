#pragma once

#include <vector>

#include "qscatter/model.hpp"

namespace qscatter {

// Joint excitation amplitudes of the emitter-probe pair restricted to the
// zero/one-excitation sector: |psi> = zeta|00> + alpha1|e,0> + alpha2|0,e>.
struct SinglePhotonAmplitudes {
  Complex zeta;
  Complex alpha1;
  Complex alpha2;
};

struct AmplitudeTrajectory {
  TimeGrid grid;
  std::vector<SinglePhotonAmplitudes> states;
};

// Field radiated by the decaying emitter alone: sqrt(gamma_e)/2 * e^{-gamma2_e t}.
ComplexEnvelope emitter_envelope(const RateSet& rates, const TimeGrid& grid);

// Time derivative of the amplitudes in the frame rotating with the probe:
//   zeta' = 0
//   alpha1' = -(gamma_e/2) alpha1
//   alpha2' = -(gamma_p/2) alpha2 - (1/2) sqrt(gamma_p gamma_e / 2) e^{-i delta t} alpha1
SinglePhotonAmplitudes amplitude_rhs(const SinglePhotonAmplitudes& s, double t,
                                     const RateSet& rates, double delta);

// Integrates the amplitude equations from (1/sqrt2, 1/sqrt2, 0), sampled on `grid`.
AmplitudeTrajectory solve_amplitudes(const RateSet& rates, double delta, const TimeGrid& grid,
                                     double rel_tol = 1e-10);

// Field envelope assembled from an amplitude trajectory. The scattered part is
// scale * sqrt(gamma_p/2) * sqrt(2) * alpha2 * e^{+i delta t}; the full field
// adds the emitter term scale * sqrt(gamma_e) * zeta^* alpha1.
ComplexEnvelope vq_from_amplitudes(const AmplitudeTrajectory& traj, const RateSet& rates,
                                   double delta, Complex scale, bool scattered_only);

// Closed-form field scattered by the probe driven by the emitter's photon:
//   V_sc(t) = scale sqrt(gamma_p/2) sqrt(gamma_e gamma_p)
//             (e^{-gamma2_e t} - e^{(-gamma2_p + i delta) t})
//             / (gamma_e - gamma_p + 2 i delta),
// with the removable gamma_e ~ gamma_p, delta ~ 0 singularity replaced by its
// continuous limit -(t/2) e^{-gamma2_e t} (plus first-order correction) when
// |gamma_e - gamma_p + 2 i delta| < 1e-9 (gamma_e + gamma_p).
// With scattered_only = false the emitter term sqrt(gamma_e) e^{-gamma2_e t}/2
// is added. drive.omega0 is ignored; drive.detuning and drive.scale apply.
ComplexEnvelope quantum_closed_form(const RateSet& rates, const DriveSpec& drive,
                                    const TimeGrid& grid, bool scattered_only);

// One total-field envelope per detuning (emitter term included), closed form.
std::vector<ComplexEnvelope> detuning_sweep(const RateSet& rates,
                                            const std::vector<double>& detunings,
                                            const TimeGrid& grid, Complex scale);

}  // namespace qscatter
