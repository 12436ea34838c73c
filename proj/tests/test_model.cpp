#include "doctest.h"
#include "qscatter/model.hpp"
#include "qscatter/units.hpp"

using namespace qscatter;

TEST_CASE("unit conversions are 2pi factors and ns/us scalings") {
  CHECK(mhz_to_angular(0.0) == 0.0);
  CHECK(mhz_to_angular(1.0) == doctest::Approx(6.283185307179586).epsilon(1e-15));
  CHECK(mhz_to_angular(1.86) == doctest::Approx(11.686724671354032).epsilon(1e-14));
  CHECK(angular_to_mhz(mhz_to_angular(0.37)) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(ns_to_us(2000.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(us_to_ns(0.5) == doctest::Approx(500.0).epsilon(1e-15));
}

TEST_CASE("radiative RateSet halves rates into coherence decays") {
  const RateSet r = RateSet::radiative(8.0, 12.0);
  CHECK(r.gamma_e == 8.0);
  CHECK(r.gamma_p == 12.0);
  CHECK(r.gamma2_e == 4.0);
  CHECK(r.gamma2_p == 6.0);
  CHECK(r.min_decay() == 8.0);

  const RateSet m = RateSet::from_mhz(0.09, 1.0);
  CHECK(m.gamma_e == doctest::Approx(mhz_to_angular(0.09)).epsilon(1e-15));
  CHECK(m.gamma2_p == doctest::Approx(mhz_to_angular(1.0) / 2).epsilon(1e-15));
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("RateSet::validate names the offending field") {
  RateSet r = RateSet::radiative(1.0, 2.0);
  r.gamma_e = -1.0;
  try {
    r.validate();
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "gamma_e");
    CHECK(e.category() == "validation");
  }

  RateSet d = RateSet::radiative(1.0, 2.0);
  d.gamma2_e = 0.3;  // below gamma_e/2: unphysical coherence decay
  CHECK_THROWS_AS(d.validate(), ValidationError);
}

TEST_CASE("DriveSpec::validate rejects negative amplitude and non-finite fields") {
  DriveSpec d{-1.0, 0.0, Complex(1.0, 0.0)};
  CHECK_THROWS_AS(d.validate(), ValidationError);
  DriveSpec ok{2.0, -3.0, Complex(0.0, 1.0)};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("TimeGrid endpoints are exact and spacing uniform") {
  const TimeGrid g(2.0, 9);
  CHECK(g.t(0) == 0.0);
  CHECK(g.t(8) == 2.0);
  CHECK(g.t(2) == doctest::Approx(0.5).epsilon(1e-16));
  CHECK(g.dt() == doctest::Approx(0.25).epsilon(1e-16));
  CHECK(g.size() == 9);
  CHECK(g.times().size() == 9);
  CHECK(g == TimeGrid(2.0, 9));
  CHECK(g != TimeGrid(2.0, 10));
  CHECK_THROWS_AS(TimeGrid(0.0, 9), ValidationError);
  CHECK_THROWS_AS(TimeGrid(1.0, 1), ValidationError);
}

TEST_CASE("envelope subtraction is pointwise and shape-checked") {
  const TimeGrid g(1.0, 4);
  ComplexEnvelope a = ComplexEnvelope::zeros(g);
  ComplexEnvelope b = ComplexEnvelope::zeros(g);
  for (int i = 0; i < 4; ++i) {
    a.samples[static_cast<size_t>(i)] = Complex(2.0, 0.0);
    b.samples[static_cast<size_t>(i)] = Complex(1.0, 1.0);
  }
  const ComplexEnvelope d = envelope_subtract(a, b);
  for (const Complex& s : d.samples) CHECK(s == Complex(1.0, -1.0));

  const ComplexEnvelope self = envelope_subtract(a, a);
  for (const Complex& s : self.samples) CHECK(s == Complex(0.0, 0.0));

  ComplexEnvelope c = ComplexEnvelope::zeros(TimeGrid(1.0, 5));
  CHECK_THROWS_AS(envelope_subtract(a, c), ShapeError);
}

TEST_CASE("quadratures split real and imaginary parts") {
  const TimeGrid g(1.0, 3);
  ComplexEnvelope v = ComplexEnvelope::zeros(g);
  v.samples = {Complex(0.0, 1.0), Complex(0.0, -2.0), Complex(0.0, 0.5)};
  auto [re, im] = quadratures(v);
  for (double x : re) CHECK(x == 0.0);
  CHECK(im[1] == -2.0);
  CHECK(envelope_sup(v) == doctest::Approx(2.0).epsilon(1e-15));
}
