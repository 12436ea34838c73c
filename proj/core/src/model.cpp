#include "qscatter/model.hpp"

#include <cmath>

namespace qscatter {

void RateSet::validate() const {
  if (!(gamma_e > 0.0) || !std::isfinite(gamma_e))
    throw ValidationError("gamma_e", "must be > 0 and finite");
  if (!(gamma_p > 0.0) || !std::isfinite(gamma_p))
    throw ValidationError("gamma_p", "must be > 0 and finite");
  // Coherences decay at least at half the energy decay rate.
  if (!(gamma2_e >= gamma_e / 2.0) || !std::isfinite(gamma2_e))
    throw ValidationError("gamma2_e", "must be >= gamma_e/2 and finite");
  if (!(gamma2_p >= gamma_p / 2.0) || !std::isfinite(gamma2_p))
    throw ValidationError("gamma2_p", "must be >= gamma_p/2 and finite");
}

void DriveSpec::validate() const {
  if (!(omega0 >= 0.0) || !std::isfinite(omega0))
    throw ValidationError("omega0", "must be >= 0 and finite");
  if (!std::isfinite(detuning)) throw ValidationError("detuning", "must be finite");
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag()))
    throw ValidationError("scale", "must be finite");
}

bool ComplexEnvelope::all_finite() const {
  for (const Complex& v : samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexEnvelope envelope_subtract(const ComplexEnvelope& a, const ComplexEnvelope& b) {
  if (a.grid != b.grid) throw ShapeError("envelope_subtract: grids differ");
  std::vector<Complex> out(a.samples.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.samples[i] - b.samples[i];
  return ComplexEnvelope(a.grid, std::move(out));
}

std::pair<std::vector<double>, std::vector<double>> quadratures(const ComplexEnvelope& v) {
  std::vector<double> re(v.samples.size()), im(v.samples.size());
  for (size_t i = 0; i < v.samples.size(); ++i) {
    re[i] = v.samples[i].real();
    im[i] = v.samples[i].imag();
  }
  return {std::move(re), std::move(im)};
}

double envelope_sup(const ComplexEnvelope& v) {
  double m = 0.0;
  for (const Complex& s : v.samples) m = std::max(m, std::abs(s));
  return m;
}

}  // namespace qscatter
