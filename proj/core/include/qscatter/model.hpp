#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qscatter/errors.hpp"
#include "qscatter/units.hpp"

namespace qscatter {

using Complex = std::complex<double>;

// Decay/dephasing rates of the two two-level systems, in rad/us.
//   gamma_e  : emitter energy decay rate
//   gamma_p  : probe energy decay rate
//   gamma2_e : emitter coherence decay rate (defaults to gamma_e/2)
//   gamma2_p : probe coherence decay rate   (defaults to gamma_p/2)
// Plain aggregate; call validate() at trust boundaries.
struct RateSet {
  double gamma_e = 0.0;
  double gamma_p = 0.0;
  double gamma2_e = 0.0;
  double gamma2_p = 0.0;

  // Radiative-limited rates: coherences decay at half the energy decay rate.
  static RateSet radiative(double gamma_e, double gamma_p) {
    return RateSet{gamma_e, gamma_p, gamma_e / 2.0, gamma_p / 2.0};
  }

  static RateSet from_mhz(double gamma_e_mhz, double gamma_p_mhz) {
    return radiative(mhz_to_angular(gamma_e_mhz), mhz_to_angular(gamma_p_mhz));
  }

  double min_decay() const { return gamma_e < gamma_p ? gamma_e : gamma_p; }

  void validate() const;
};

// Classical drive: amplitude Omega0 (rad/us), carrier detuning from the probe
// (rad/us), and a global complex scale applied to reported envelopes.
struct DriveSpec {
  double omega0 = 0.0;
  double detuning = 0.0;
  Complex scale = Complex(1.0, 0.0);

  void validate() const;
};

// Uniform closed time grid t_i = i * t_max / (n_points - 1), i = 0..n_points-1.
// First sample is exactly 0, last is exactly t_max. Times in us.
class TimeGrid {
 public:
  TimeGrid(double t_max, int n_points) : t_max_(t_max), n_points_(n_points) {
    if (!(t_max > 0.0)) throw ValidationError("t_max", "must be > 0");
    if (n_points < 2) throw ValidationError("n_points", "must be >= 2");
  }

  double t_max() const { return t_max_; }
  int size() const { return n_points_; }
  double dt() const { return t_max_ / (n_points_ - 1); }

  double t(int i) const { return t_max_ * static_cast<double>(i) / (n_points_ - 1); }

  std::vector<double> times() const {
    std::vector<double> out(static_cast<size_t>(n_points_));
    for (int i = 0; i < n_points_; ++i) out[static_cast<size_t>(i)] = t(i);
    return out;
  }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.t_max_ == b.t_max_ && a.n_points_ == b.n_points_;
  }
  friend bool operator!=(const TimeGrid& a, const TimeGrid& b) { return !(a == b); }

 private:
  double t_max_;
  int n_points_;
};

// Complex field samples on a TimeGrid (arbitrary field units).
struct ComplexEnvelope {
  TimeGrid grid;
  std::vector<Complex> samples;

  ComplexEnvelope(TimeGrid g, std::vector<Complex> s) : grid(g), samples(std::move(s)) {
    if (static_cast<int>(samples.size()) != grid.size())
      throw ShapeError("envelope sample count does not match its grid");
  }

  static ComplexEnvelope zeros(const TimeGrid& g) {
    return ComplexEnvelope(g, std::vector<Complex>(static_cast<size_t>(g.size())));
  }

  bool all_finite() const;
};

// Pointwise a - b. Grids must match exactly.
ComplexEnvelope envelope_subtract(const ComplexEnvelope& a, const ComplexEnvelope& b);

// Real and imaginary quadratures as separate sample vectors.
std::pair<std::vector<double>, std::vector<double>> quadratures(const ComplexEnvelope& v);

// sup-norm of the samples.
double envelope_sup(const ComplexEnvelope& v);

}  // namespace qscatter
