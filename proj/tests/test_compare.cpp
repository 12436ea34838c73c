#include <cmath>
#include <complex>
#include <cstdlib>

#include "doctest.h"
#include "qscatter/classical.hpp"
#include "qscatter/compare.hpp"
#include "qscatter/quantum.hpp"
#include "qscatter/units.hpp"
#include "test_util.hpp"

using namespace qscatter;
using qscatter::test::sup_diff;

namespace {

const RateSet kFig = RateSet::from_mhz(0.09, 1.0);

ComplexEnvelope constant_envelope(const TimeGrid& grid, double v) {
  ComplexEnvelope e = ComplexEnvelope::zeros(grid);
  for (Complex& s : e.samples) s = Complex(v, 0.0);
  return e;
}

ComplexEnvelope scaled_envelope(const ComplexEnvelope& e, double c) {
  ComplexEnvelope out = e;
  for (Complex& s : out.samples) s *= c;
  return out;
}

// Total detected classical envelope: Bloch-scattered plus incoming pulse.
ComplexEnvelope classical_total(const RateSet& rates, double omega0, const TimeGrid& grid) {
  const DriveSpec drive{omega0, 0.0, Complex(1.0, 0.0)};
  ComplexEnvelope v = evolve_bloch(rates, drive, grid).envelope;
  const ComplexEnvelope in = incoming_field(rates, drive, grid);
  for (size_t i = 0; i < v.samples.size(); ++i) v.samples[i] += in.samples[i];
  return v;
}

ComplexEnvelope quantum_total(const RateSet& rates, const TimeGrid& grid) {
  return quantum_closed_form(rates, DriveSpec{0.0, 0.0, Complex(1.0, 0.0)}, grid, false);
}

}  // namespace

TEST_CASE("EpsilonConfig rejects non-positive windows and out-of-range floors") {
  CHECK_THROWS_AS(([] {
                    EpsilonConfig c;
                    c.window_factor = 0.0;
                    c.validate();
                  })(),
                  ValidationError);
  CHECK_THROWS_AS(([] {
                    EpsilonConfig c;
                    c.denom_floor = 0.0;
                    c.validate();
                  })(),
                  ValidationError);
  CHECK_THROWS_AS(([] {
                    EpsilonConfig c;
                    c.denom_floor = 1.0;
                    c.validate();
                  })(),
                  ValidationError);
  CHECK(EpsilonConfig{}.window(RateSet::radiative(10.0, 20.0)) ==
        doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("identical envelopes have zero distance") {
  const RateSet r = RateSet::radiative(10.0, 20.0);
  const TimeGrid grid(1.0, 101);
  const ComplexEnvelope v = constant_envelope(grid, 0.7);
  const EpsilonResult res = epsilon(v, v, r, EpsilonConfig{});
  CHECK(res.value == 0.0);
  CHECK(res.clamped_fraction == 0.0);
  CHECK_FALSE(res.ill_conditioned);
}

TEST_CASE("constant envelopes integrate exactly") {
  // (3-1)^2/(3+1)^2 = 1/4 over a unit window -> 0.5
  const RateSet r = RateSet::radiative(10.0, 20.0);
  const TimeGrid grid(1.0, 101);
  const EpsilonResult res =
      epsilon(constant_envelope(grid, 3.0), constant_envelope(grid, 1.0), r,
              EpsilonConfig{});
  CHECK(res.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.clamped_fraction == 0.0);
}

TEST_CASE("the metric is scale invariant and symmetric") {
  const RateSet r = RateSet::radiative(10.0, 20.0);
  const TimeGrid grid(1.0, 201);
  ComplexEnvelope a = ComplexEnvelope::zeros(grid);
  ComplexEnvelope b = ComplexEnvelope::zeros(grid);
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.t(i);
    a.samples[static_cast<size_t>(i)] = Complex(std::exp(-2.0 * t), 0.0);
    b.samples[static_cast<size_t>(i)] = Complex(1.5 * std::exp(-3.0 * t), 0.0);
  }
  const EpsilonConfig cfg;
  const double base = epsilon(a, b, r, cfg).value;

  // powers of two rescale numerator and denominator exactly
  CHECK(epsilon(scaled_envelope(a, 4.0), scaled_envelope(b, 4.0), r, cfg).value == base);
  CHECK(epsilon(scaled_envelope(a, M_PI), scaled_envelope(b, M_PI), r, cfg).value ==
        doctest::Approx(base).epsilon(1e-12));
  CHECK(epsilon(b, a, r, cfg).value == base);
}

TEST_CASE("shape and window requirements are enforced") {
  const RateSet r = RateSet::radiative(10.0, 20.0);
  const ComplexEnvelope a = constant_envelope(TimeGrid(1.0, 11), 1.0);
  const ComplexEnvelope b = constant_envelope(TimeGrid(1.0, 12), 1.0);
  CHECK_THROWS_AS(epsilon(a, b, r, EpsilonConfig{}), ShapeError);

  // grid shorter than the integration window
  const ComplexEnvelope c = constant_envelope(TimeGrid(0.5, 11), 1.0);
  CHECK_THROWS_AS(epsilon(c, c, r, EpsilonConfig{}), ValidationError);

  // grid so coarse only t=0 lands inside the window
  const ComplexEnvelope d = constant_envelope(TimeGrid(50.0, 3), 1.0);
  ComplexEnvelope e = d;
  e.samples[0] += 0.5;
  CHECK_THROWS_AS(epsilon(d, e, r, EpsilonConfig{}), ValidationError);
}

TEST_CASE("anti-phase envelopes are flagged as ill-conditioned") {
  const RateSet r = RateSet::radiative(10.0, 20.0);
  const TimeGrid grid(1.0, 201);
  ComplexEnvelope q = ComplexEnvelope::zeros(grid);
  for (int i = 0; i < grid.size(); ++i)
    q.samples[static_cast<size_t>(i)] = Complex(std::exp(-grid.t(i)), 0.0);
  const ComplexEnvelope c = scaled_envelope(q, -1.0);
  const EpsilonResult res = epsilon(c, q, r, EpsilonConfig{});
  CHECK(res.clamped_fraction == 1.0);
  CHECK(res.ill_conditioned);
  CHECK(res.value > 0.0);
}

TEST_CASE("fast-decaying tails clamp without poisoning the value") {
  const RateSet r = RateSet::radiative(10.0, 20.0);
  const TimeGrid grid(1.0, 401);
  ComplexEnvelope q = ComplexEnvelope::zeros(grid);
  for (int i = 0; i < grid.size(); ++i)
    q.samples[static_cast<size_t>(i)] = Complex(std::exp(-10.0 * grid.t(i)), 0.0);
  const ComplexEnvelope c = scaled_envelope(q, 2.0);
  const EpsilonResult res = epsilon(c, q, r, EpsilonConfig{});
  CHECK(res.clamped_fraction > 0.5);
  CHECK(res.ill_conditioned);
  CHECK(std::isfinite(res.value));
}

TEST_CASE("single-photon-regime distance matches an independent computation") {
  const EpsilonConfig cfg;
  const TimeGrid grid(cfg.window(kFig), 2001);
  const ComplexEnvelope cl = classical_total(kFig, mhz_to_angular(0.3), grid);
  const ComplexEnvelope q = quantum_total(kFig, grid);
  const EpsilonResult res = epsilon(cl, q, kFig, cfg);
  CHECK(res.value == doctest::Approx(0.2504752970782478).epsilon(1e-6));
  // the long tail sits under the denominator floor in this regime
  CHECK(res.clamped_fraction == doctest::Approx(0.647).epsilon(0.06));
  CHECK(res.ill_conditioned);
}

TEST_CASE("golden-section minimizer converges on a smooth quadratic") {
  int evals = 0;
  auto f = [&evals](double x) {
    ++evals;
    return (x - 5.0) * (x - 5.0) + 2.0;
  };
  const MinimizeResult res = bracketed_minimize(f, 1.0, 9.0, 1e-8);
  CHECK(std::abs(res.x - 5.0) < 1e-7);
  CHECK(res.fx == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(static_cast<int>(res.profile.size()) == evals);
  CHECK(res.profile.size() > 10);

  const MinimizeResult again = bracketed_minimize(f, 1.0, 9.0, 1e-8);
  CHECK(again.x == res.x);
  CHECK(again.fx == res.fx);
}

TEST_CASE("bracket expansion recovers a minimum the initial bracket misses") {
  auto f = [](double x) { return (x - 3.0) * (x - 3.0); };
  // geometric midpoint of [1, 4] ties with the right end, forcing one expansion
  const MinimizeResult res = bracketed_minimize(f, 1.0, 4.0, 1e-8);
  CHECK(std::abs(res.x - 3.0) < 1e-6);
}

TEST_CASE("a maximum in the bracket raises an error carrying the profile") {
  auto f = [](double x) { return -(x - 5.0) * (x - 5.0); };
  try {
    bracketed_minimize(f, 1.0, 9.0, 1e-8);
    FAIL("expected OptimizationError");
  } catch (const OptimizationError& e) {
    CHECK(e.category() == "optimization");
    CHECK(e.profile().size() >= 9);
  }
}

TEST_CASE("minimizer input validation") {
  auto f = [](double x) { return x * x; };
  CHECK_THROWS_AS(bracketed_minimize(f, 2.0, 1.0, 1e-8), ValidationError);
  CHECK_THROWS_AS(bracketed_minimize(f, 1.0, 2.0, 0.0), ValidationError);
}

TEST_CASE("default search bracket brackets the geometric-mean rate") {
  const auto [lo, hi] = default_bracket(RateSet::radiative(4.0, 9.0));
  CHECK(lo == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(hi == doctest::Approx(18.0).epsilon(1e-15));
}

TEST_CASE("optimal amplitude in the single-photon regime") {
  const EpsilonConfig cfg;
  const double s = std::sqrt(kFig.gamma_e * kFig.gamma_p);
  const double tol = 1e-3 * s;
  const ComparisonResult res = optimize_omega(kFig, cfg, default_bracket(kFig), tol, 1601);
  CHECK(res.converged);
  CHECK(std::abs(res.omega_star - 1.991205242840047) < 3.0 * tol);
  CHECK(res.epsilon == doctest::Approx(0.24032469731308156).epsilon(1e-4));
  CHECK(res.epsilon_normalized > 0.0);
  CHECK(res.epsilon_normalized <= 1.0);

  // curves are total detected envelopes on the metric window
  REQUIRE(res.classical_curve.grid == res.quantum_curve.grid);
  const ComplexEnvelope q_ref = quantum_total(kFig, res.quantum_curve.grid);
  CHECK(sup_diff(res.quantum_curve, q_ref) < 1e-14);
  const double incoming0 = res.omega_star / (2.0 * std::sqrt(kFig.gamma_p));
  CHECK(res.classical_curve.samples[0].real() ==
        doctest::Approx(incoming0).epsilon(1e-12));
}

TEST_CASE("equal rates: the best classical amplitude sits below the matched one") {
  const RateSet r = RateSet::from_mhz(1.0, 1.0);
  const EpsilonConfig cfg;
  const double s = std::sqrt(r.gamma_e * r.gamma_p);
  const double tol = 1e-3 * s;
  const ComparisonResult res = optimize_omega(r, cfg, default_bracket(r), tol, 1601);
  CHECK(res.converged);
  CHECK(res.omega_star < 0.99 * s);
  CHECK(std::abs(res.omega_star - 6.111299282706215) < 3.0 * tol);
  CHECK(res.epsilon == doctest::Approx(0.19693769237580996).epsilon(1e-4));

  const ComparisonResult again = optimize_omega(r, cfg, default_bracket(r), tol, 1601);
  CHECK(again.omega_star == res.omega_star);
  CHECK(again.epsilon == res.epsilon);
}

TEST_CASE("an amplitude scan brackets the optimizer result") {
  const EpsilonConfig cfg;
  const auto [lo, hi] = default_bracket(kFig);
  const auto scan = scan_omega(kFig, cfg, lo, hi, 41, 1601);
  REQUIRE(scan.size() == 41);
  CHECK(scan.front().first == doctest::Approx(lo).epsilon(1e-15));
  CHECK(scan.back().first == doctest::Approx(hi).epsilon(1e-15));

  double best_w = 0.0, best_e = 1e300;
  for (const auto& [w, e] : scan) {
    CHECK(e > 0.0);
    if (e < best_e) {
      best_e = e;
      best_w = w;
    }
  }
  CHECK(best_e >= 0.24032469731308156 - 1e-4);  // scan cannot beat the optimum
  CHECK(std::abs(best_w - 1.991205242840047) < (hi - lo) / 40.0);
}

TEST_CASE("rate-grid sweep normalizes to a unit maximum and is deterministic") {
  std::vector<double> ge, gp;
  for (double f : {0.5, 0.875, 1.25, 1.625, 2.0}) {
    ge.push_back(mhz_to_angular(f));
    gp.push_back(mhz_to_angular(f));
  }
  const EpsilonConfig cfg;
  const RateGridResult a = rate_grid_sweep(ge, gp, mhz_to_angular(1.0), cfg, 401);
  REQUIRE(a.eps_norm.size() == 5);
  REQUIRE(a.eps_norm[0].size() == 5);
  CHECK(a.eps_max > 0.0);
  double top = 0.0;
  for (const auto& row : a.eps_norm)
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      top = std::max(top, v);
    }
  CHECK(top == 1.0);

  // bit-identical rerun, also with the sweep forced onto a single thread
  setenv("QSCATTER_THREADS", "1", 1);
  const RateGridResult b = rate_grid_sweep(ge, gp, mhz_to_angular(1.0), cfg, 401);
  unsetenv("QSCATTER_THREADS");
  CHECK(b.eps_max == a.eps_max);
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 5; ++j) CHECK(a.eps_norm[i][j] == b.eps_norm[i][j]);
}

TEST_CASE("optimal-amplitude curve over rate ratios") {
  const std::vector<double> ratios = {0.5, 1.0, 2.0};
  const EpsilonConfig cfg;
  const auto pts = optimal_curve(ratios, mhz_to_angular(1.0), cfg, 1e-3, 801);
  REQUIRE(pts.size() == 3);
  double top = 0.0;
  for (const auto& p : pts) {
    CHECK(p.converged);
    CHECK(p.eps_min > 0.0);
    CHECK(p.omega_star > 0.0);
    top = std::max(top, p.eps_min_normalized);
  }
  CHECK(top == 1.0);
  // ratio 1: optimal amplitude below the geometric-mean rate
  CHECK(pts[1].ratio == 1.0);
  CHECK(pts[1].omega_star < mhz_to_angular(1.0));
}
