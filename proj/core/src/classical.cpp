#include "qscatter/classical.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "exp_ratio.hpp"
#include "qscatter/ode.hpp"

namespace qscatter {

namespace {

void require_resonant(const DriveSpec& drive, const char* op) {
  if (drive.detuning != 0.0)
    throw ValidationError("detuning", std::string(op) + " is defined for resonant drive only");
}

}  // namespace

double BlochState::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochState bloch_rhs(const BlochState& s, double t, const RateSet& rates,
                     const DriveSpec& drive) {
  const double omega = drive.omega0 * std::exp(-rates.gamma2_e * t);
  const double hg = rates.gamma_p / 2.0;
  BlochState d;
  d.x = -drive.detuning * s.y - hg * s.x;
  d.y = drive.detuning * s.x - omega * s.z - hg * s.y;
  d.z = -rates.gamma_p * (1.0 + s.z) + omega * s.y;
  return d;
}

std::vector<double> BlochResult::sigma_y_field() const {
  std::vector<double> out(states.size());
  for (size_t i = 0; i < states.size(); ++i) out[i] = -states[i].y;
  return out;
}

BlochResult evolve_bloch(const RateSet& rates, const DriveSpec& drive, const TimeGrid& grid,
                         double rel_tol) {
  const std::array<double, 3> y0 = {0.0, 0.0, -1.0};
  auto rhs = [&](double t, const std::array<double, 3>& y, std::array<double, 3>& dy) {
    BlochState d = bloch_rhs(BlochState{y[0], y[1], y[2]}, t, rates, drive);
    dy = {d.x, d.y, d.z};
  };
  auto ys = integrate_at<3>(rhs, y0, grid.times(), rel_tol);

  const double w = std::sqrt(rates.gamma_p / 2.0) / 2.0;
  std::vector<BlochState> states;
  states.reserve(ys.size());
  std::vector<Complex> env(ys.size());
  for (size_t i = 0; i < ys.size(); ++i) {
    states.push_back(BlochState{ys[i][0], ys[i][1], ys[i][2]});
    env[i] = drive.scale * (-w) * Complex(states[i].y, states[i].x);
  }
  return BlochResult{grid, std::move(states), ComplexEnvelope(grid, std::move(env))};
}

ComplexEnvelope first_order_field(const RateSet& rates, const DriveSpec& drive,
                                  const TimeGrid& grid) {
  require_resonant(drive, "first_order_field");
  const double g2 = rates.gamma2_e;
  const double gp = rates.gamma_p;
  const Complex l1(-g2, 0.0);
  const Complex l2(-gp / 2.0, 0.0);
  const double denom = 2.0 * g2 - gp;  // == -2 (l1 - l2)
  const double amp = std::sqrt(gp / 2.0) * drive.omega0;
  const bool degenerate = std::abs(denom) < 1e-9 * (2.0 * g2 + gp);

  std::vector<Complex> s(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.t(i);
    const Complex ratio = degenerate
                              ? -0.5 * detail::exp_diff_ratio(l1, l2, t, 1e300)
                              : (std::exp(l1 * t) - std::exp(l2 * t)) / denom;
    s[static_cast<size_t>(i)] = drive.scale * amp * ratio;
  }
  return ComplexEnvelope(grid, std::move(s));
}

ComplexEnvelope incoming_field(const RateSet& rates, const DriveSpec& drive,
                               const TimeGrid& grid) {
  const double amp = drive.omega0 / (2.0 * std::sqrt(rates.gamma_p));
  std::vector<Complex> s(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i)
    s[static_cast<size_t>(i)] =
        drive.scale * amp * std::exp(-rates.gamma2_e * grid.t(i));
  return ComplexEnvelope(grid, std::move(s));
}

ComplexEnvelope third_order_field(const RateSet& rates, const DriveSpec& drive,
                                  const TimeGrid& grid) {
  require_resonant(drive, "third_order_field");
  const double ge = rates.gamma_e, gp = rates.gamma_p;
  const double scale_tol = 1e-9 * (ge + gp);
  if (std::abs(ge - gp) < scale_tol)
    throw DegenerateParameterError("third_order_field: gamma_e ~ gamma_p; use series_sum");
  if (std::abs(3.0 * ge - gp) < scale_tol)
    throw DegenerateParameterError("third_order_field: 3 gamma_e ~ gamma_p; use series_sum");
  if (ge < scale_tol)
    throw DegenerateParameterError("third_order_field: gamma_e ~ 0; use series_sum");

  const double om = drive.omega0;
  const double pref = std::sqrt(gp / 2.0) * 2.0 * om * om * om /
                      (ge * (ge - gp) * (ge - gp) * (3.0 * ge - gp) * (ge + gp));
  const double c1 = (ge - gp) * (ge - gp);
  const double c2 = 3.0 * ge * ge + 2.0 * ge * gp - gp * gp;
  const double c3 = -ge * (3.0 * ge - gp);
  const double c4 = -ge * (ge + gp);

  std::vector<Complex> s(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.t(i);
    const double m = c1 * std::exp((3.0 * ge + gp) * t / 2.0) +
                     c2 * std::exp((ge + gp) * t / 2.0) + c3 * std::exp(ge * t) +
                     c4 * std::exp(gp * t);
    s[static_cast<size_t>(i)] =
        drive.scale * pref * std::exp(-t * (1.5 * ge + gp)) * m;
  }
  return ComplexEnvelope(grid, std::move(s));
}

namespace {

// Corrections depend on (gamma_p, gamma2_e) only; cache whole prefixes so
// concurrent sweeps recompute nothing. Values returned by copy.
struct SeriesKey {
  double gamma_p;
  double gamma2_e;
  bool operator<(const SeriesKey& o) const {
    if (gamma_p != o.gamma_p) return gamma_p < o.gamma_p;
    return gamma2_e < o.gamma2_e;
  }
};

std::vector<SeriesCorrection> compute_corrections(int n_max, const RateSet& rates) {
  const double gp = rates.gamma_p;
  const double g2 = rates.gamma2_e;
  const Complex up(gp / 2.0 - g2, 0.0);    // factor in the y(n) equation
  const Complex down(-gp / 2.0 - g2, 0.0); // factor in the z(n) equation

  std::vector<SeriesCorrection> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  out.push_back(SeriesCorrection{0, ExpPoly::zero(), ExpPoly::constant(Complex(-1.0, 0.0))});
  for (int n = 1; n <= n_max; ++n) {
    const SeriesCorrection& prev = out.back();
    ExpPoly y = prev.sigma_z.mul_exp(up).integrate_zero();
    // z(n)' + gamma_p z(n) = -e^{down t} y(n-1): integrating factor e^{gamma_p t}.
    ExpPoly z = prev.sigma_y.mul_exp(down + Complex(gp, 0.0))
                    .scaled(Complex(-1.0, 0.0))
                    .integrate_zero()
                    .mul_exp(Complex(-gp, 0.0));
    out.push_back(SeriesCorrection{n, std::move(y), std::move(z)});
  }
  return out;
}

std::mutex g_series_mutex;
std::map<SeriesKey, std::vector<SeriesCorrection>> g_series_cache;

std::vector<SeriesCorrection> corrections_to(int n_max, const RateSet& rates) {
  const SeriesKey key{rates.gamma_p, rates.gamma2_e};
  std::lock_guard<std::mutex> lock(g_series_mutex);
  auto& entry = g_series_cache[key];
  if (static_cast<int>(entry.size()) <= n_max) entry = compute_corrections(n_max, rates);
  return std::vector<SeriesCorrection>(entry.begin(), entry.begin() + n_max + 1);
}

}  // namespace

SeriesCorrection series_correction(int n, const RateSet& rates) {
  if (n < 0) throw ValidationError("n", "must be >= 0");
  return corrections_to(n, rates).back();
}

ComplexEnvelope series_sum(int n_max, const RateSet& rates, const DriveSpec& drive,
                           const TimeGrid& grid) {
  if (n_max < 1) throw ValidationError("n_max", "must be >= 1");
  require_resonant(drive, "series_sum");
  auto corr = corrections_to(n_max, rates);

  const double w = std::sqrt(rates.gamma_p / 2.0) / 2.0;
  std::vector<Complex> s(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.t(i);
    Complex y_sum(0.0, 0.0);
    double om_pow = 1.0;
    for (int n = 1; n <= n_max; ++n) {
      om_pow *= drive.omega0;
      if (!corr[static_cast<size_t>(n)].sigma_y.empty())
        y_sum += om_pow * corr[static_cast<size_t>(n)].sigma_y.eval(t);
    }
    s[static_cast<size_t>(i)] =
        drive.scale * w * std::exp(-rates.gamma_p * t / 2.0) * y_sum;
  }
  return ComplexEnvelope(grid, std::move(s));
}

double second_order_ode_residual(const std::vector<double>& y_traj, const RateSet& rates,
                                 const DriveSpec& drive, const TimeGrid& grid) {
  if (static_cast<int>(y_traj.size()) != grid.size())
    throw ShapeError("second_order_ode_residual: sample count does not match grid");
  const double min_rate = rates.min_decay();
  const double span_scale = 10.0 / min_rate;
  if (grid.dt() > span_scale / 1000.0)
    throw ResolutionError("second_order_ode_residual: grid too coarse for second "
                          "finite differences (need >= 1001 points per 10/min-rate span)");

  const double ge = rates.gamma_e, gp = rates.gamma_p, om = drive.omega0;
  const double dt = grid.dt();
  double worst = 0.0;
  for (int i = 1; i + 1 < grid.size(); ++i) {
    const double t = grid.t(i);
    const double y = y_traj[static_cast<size_t>(i)];
    const double yl = y_traj[static_cast<size_t>(i - 1)];
    const double yr = y_traj[static_cast<size_t>(i + 1)];
    const double d1 = (yr - yl) / (2.0 * dt);
    const double d2 = (yr - 2.0 * y + yl) / (dt * dt);
    const double res = 4.0 * gp * om +
                       std::exp(ge * t / 2.0) *
                           (4.0 * d2 + 2.0 * (ge + 3.0 * gp) * d1 +
                            gp * (ge + 2.0 * gp) * y) +
                       4.0 * om * om * std::exp(-ge * t / 2.0) * y;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace qscatter
