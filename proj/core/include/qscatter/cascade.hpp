#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qscatter/model.hpp"

namespace qscatter {

// Two-qubit basis ordering: index = 2*emitter + probe with g=0, e=1,
// i.e. {gg, ge, eg, ee} = {0, 1, 2, 3}.
using Matrix4c = Eigen::Matrix4cd;

Matrix4c sigma_minus_emitter();
Matrix4c sigma_minus_probe();
Matrix4c sigma_z_emitter();
Matrix4c sigma_z_probe();

// Unidirectional emitter -> probe coupling in Lindblad form: an exchange
// Hamiltonian plus a single collective collapse operator.
struct CascadeLiouvillian {
  Matrix4c hamiltonian;  // (de/2) sz_e + (dp/2) sz_p + i sqrt(ge gp)/2 (sp_e sm_p - sp_p sm_e)
  Matrix4c collapse;     // sqrt(ge) sm_e + sqrt(gp) sm_p
};

CascadeLiouvillian build_cascade(const RateSet& rates, double delta_e, double delta_p);

// d(rho)/dt = -i[H, rho] + C rho C^+ - (1/2){C^+C, rho}
Matrix4c rho_dot(const CascadeLiouvillian& liouv, const Matrix4c& rho);

// Checks Hermiticity (1e-10), unit trace (1e-10) and spectrum >= -1e-8.
// Throws IntegrationDriftError naming the failed invariant.
void validate_density(const Matrix4c& rho, double t);

// Initial state of the photon-scattering problem:
// |psi> = (|gg> + |eg>)/sqrt(2) as a projector.
Matrix4c initial_density();

struct DensityTrajectory {
  TimeGrid grid;
  std::vector<Matrix4c> states;
};

// Integrates the master equation from rho0; every sample is validated.
DensityTrajectory evolve_rho(const CascadeLiouvillian& liouv, const Matrix4c& rho0,
                             const TimeGrid& grid, double rel_tol = 1e-10);

Complex expect(const Matrix4c& op, const Matrix4c& rho);

// Field envelope from dipole expectations:
// scale * (sqrt(gamma_e) <sm_e> [unless scattered_only] + sqrt(gamma_p/2) <sm_p>).
ComplexEnvelope vq_from_master(const DensityTrajectory& traj, const RateSet& rates,
                               Complex scale, bool scattered_only);

}  // namespace qscatter
