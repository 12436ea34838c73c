#include "qscatter/cascade.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qscatter/ode.hpp"

namespace qscatter {

namespace {

Matrix4c kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Eigen::Matrix2cd sm2() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 1) = Complex(1.0, 0.0);  // |g><e|
  return m;
}

Eigen::Matrix2cd sz2() {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = Complex(-1.0, 0.0);
  m(1, 1) = Complex(1.0, 0.0);
  return m;
}

Eigen::Matrix2cd id2() { return Eigen::Matrix2cd::Identity(); }

}  // namespace

Matrix4c sigma_minus_emitter() { return kron2(sm2(), id2()); }
Matrix4c sigma_minus_probe() { return kron2(id2(), sm2()); }
Matrix4c sigma_z_emitter() { return kron2(sz2(), id2()); }
Matrix4c sigma_z_probe() { return kron2(id2(), sz2()); }

CascadeLiouvillian build_cascade(const RateSet& rates, double delta_e, double delta_p) {
  const Matrix4c sm_e = sigma_minus_emitter();
  const Matrix4c sm_p = sigma_minus_probe();
  const Matrix4c sp_e = sm_e.adjoint();
  const Matrix4c sp_p = sm_p.adjoint();

  const double g = std::sqrt(rates.gamma_e * rates.gamma_p) / 2.0;
  CascadeLiouvillian l;
  l.hamiltonian = 0.5 * delta_e * sigma_z_emitter() + 0.5 * delta_p * sigma_z_probe() +
                  Complex(0.0, g) * (sp_e * sm_p - sp_p * sm_e);
  l.collapse = std::sqrt(rates.gamma_e) * sm_e + std::sqrt(rates.gamma_p) * sm_p;
  return l;
}

Matrix4c rho_dot(const CascadeLiouvillian& liouv, const Matrix4c& rho) {
  const Matrix4c& h = liouv.hamiltonian;
  const Matrix4c& c = liouv.collapse;
  const Matrix4c cdc = c.adjoint() * c;
  return Complex(0.0, -1.0) * (h * rho - rho * h) + c * rho * c.adjoint() -
         0.5 * (cdc * rho + rho * cdc);
}

void validate_density(const Matrix4c& rho, double t) {
  const double herm = (rho - Matrix4c(rho.adjoint())).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw IntegrationDriftError("density lost Hermiticity (" + std::to_string(herm) +
                                ") at t = " + std::to_string(t));
  const double tr_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (tr_err > 1e-10)
    throw IntegrationDriftError("density trace drifted by " + std::to_string(tr_err) +
                                " at t = " + std::to_string(t));
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (rho + Matrix4c(rho.adjoint())),
                                             Eigen::EigenvaluesOnly);
  const double lam_min = es.eigenvalues().minCoeff();
  if (lam_min < -1e-8)
    throw IntegrationDriftError("density lost positivity (min eigenvalue " +
                                std::to_string(lam_min) + ") at t = " + std::to_string(t));
}

Matrix4c initial_density() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = Complex(0.7071067811865475244, 0.0);  // |gg>
  psi(2) = Complex(0.7071067811865475244, 0.0);  // |eg>
  return psi * psi.adjoint();
}

DensityTrajectory evolve_rho(const CascadeLiouvillian& liouv, const Matrix4c& rho0,
                             const TimeGrid& grid, double rel_tol) {
  using State = std::array<double, 32>;
  State y0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      y0[static_cast<size_t>(2 * (4 * i + j))] = rho0(i, j).real();
      y0[static_cast<size_t>(2 * (4 * i + j) + 1)] = rho0(i, j).imag();
    }

  auto unpack = [](const State& y) {
    Matrix4c m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) = Complex(y[static_cast<size_t>(2 * (4 * i + j))],
                          y[static_cast<size_t>(2 * (4 * i + j) + 1)]);
    return m;
  };

  auto rhs = [&](double, const State& y, State& dy) {
    const Matrix4c d = rho_dot(liouv, unpack(y));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        dy[static_cast<size_t>(2 * (4 * i + j))] = d(i, j).real();
        dy[static_cast<size_t>(2 * (4 * i + j) + 1)] = d(i, j).imag();
      }
  };

  auto ys = integrate_at<32>(rhs, y0, grid.times(), rel_tol);

  DensityTrajectory traj{grid, {}};
  traj.states.reserve(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) {
    Matrix4c rho = unpack(ys[i]);
    validate_density(rho, grid.t(static_cast<int>(i)));
    traj.states.push_back(rho);
  }
  return traj;
}

Complex expect(const Matrix4c& op, const Matrix4c& rho) { return (op * rho).trace(); }

ComplexEnvelope vq_from_master(const DensityTrajectory& traj, const RateSet& rates,
                               Complex scale, bool scattered_only) {
  const Matrix4c sm_e = sigma_minus_emitter();
  const Matrix4c sm_p = sigma_minus_probe();
  const double we = std::sqrt(rates.gamma_e);
  const double wp = std::sqrt(rates.gamma_p / 2.0);
  std::vector<Complex> s(traj.states.size());
  for (size_t i = 0; i < traj.states.size(); ++i) {
    Complex v = wp * expect(sm_p, traj.states[i]);
    if (!scattered_only) v += we * expect(sm_e, traj.states[i]);
    s[i] = scale * v;
  }
  return ComplexEnvelope(traj.grid, std::move(s));
}

}  // namespace qscatter
