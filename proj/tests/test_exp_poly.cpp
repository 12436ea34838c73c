#include <complex>

#include "doctest.h"
#include "qscatter/exp_poly.hpp"

using namespace qscatter;
using C = std::complex<double>;

TEST_CASE("term evaluation: c t^k e^{rate t}") {
  CHECK(ExpPoly::zero().eval(3.7) == C(0.0));
  CHECK(ExpPoly::term(C(1.0), 0, C(-1.0)).eval(0.0) == C(1.0));
  // 0.5 e^{-1}, independently evaluated
  const C v = ExpPoly::term(C(1.0), 1, C(-2.0)).eval(0.5);
  CHECK(v.real() == doctest::Approx(0.18393972058572117).epsilon(1e-15));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("canonical form merges and cancels coincident terms") {
  const ExpPoly merged = ExpPoly::term(C(1.0), 0, C(-1.0)).add(ExpPoly::term(C(2.0), 0, C(-1.0)));
  REQUIRE(merged.terms().size() == 1);
  CHECK(merged.terms()[0].coef == C(3.0));

  const ExpPoly p =
      ExpPoly::term(C(2.0), 1, C(-0.5)).add(ExpPoly::term(C(1.5), 0, C(0.0, 1.0)));
  CHECK(p.add(p.scaled(C(-1.0))).empty());
}

TEST_CASE("same function built two ways has identical term sets") {
  const ExpPoly a =
      ExpPoly::term(C(1.0), 0, C(-1.0)).add(ExpPoly::term(C(0.5), 2, C(-1.0)));
  const ExpPoly b =
      ExpPoly::term(C(0.5), 2, C(-1.0)).add(ExpPoly::term(C(1.0), 0, C(-1.0)));
  REQUIRE(a.terms().size() == b.terms().size());
  for (size_t i = 0; i < a.terms().size(); ++i) {
    CHECK(a.terms()[i].coef == b.terms()[i].coef);
    CHECK(a.terms()[i].power == b.terms()[i].power);
    CHECK(a.terms()[i].rate == b.terms()[i].rate);
  }
}

TEST_CASE("mul_exp shifts the rate") {
  const ExpPoly p = ExpPoly::term(C(1.0), 0, C(-1.0)).mul_exp(C(-1.0));
  REQUIRE(p.terms().size() == 1);
  CHECK(p.terms()[0].rate == C(-2.0));

  const ExpPoly q = ExpPoly::term(C(2.0), 1, C(0.3)).add(ExpPoly::constant(C(1.0)));
  const C mu(-0.7, 0.2);
  for (double t : {0.0, 0.4, 1.3}) {
    const C lhs = q.mul_exp(mu).eval(t);
    const C rhs = std::exp(mu * t) * q.eval(t);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("integrate_zero: polynomial and exponential antiderivatives") {
  // constant 1 -> t
  const ExpPoly lin = ExpPoly::constant(C(1.0)).integrate_zero();
  REQUIRE(lin.terms().size() == 1);
  CHECK(lin.terms()[0].power == 1);
  CHECK(lin.eval(2.5) == C(2.5));

  // t^3 -> t^4/4
  CHECK(ExpPoly::term(C(1.0), 3, C(0.0)).integrate_zero().eval(2.0).real() ==
        doctest::Approx(4.0).epsilon(1e-15));

  // e^{-t} -> 1 - e^{-t}, exactly the two expected terms (rates sort ascending)
  const ExpPoly q = ExpPoly::term(C(1.0), 0, C(-1.0)).integrate_zero();
  REQUIRE(q.terms().size() == 2);
  CHECK(q.terms()[0].coef == C(-1.0));
  CHECK(q.terms()[0].rate == C(-1.0));
  CHECK(q.terms()[1].coef == C(1.0));
  CHECK(q.terms()[1].rate == C(0.0));
  CHECK(q.eval(0.0) == C(0.0));
}

TEST_CASE("integrate_zero reproduces a quadrature reference value") {
  // p(t) = 2 t^2 e^{-3t} + t - 1; integral over [0, 0.7] frozen from an
  // independent high-precision quadrature.
  const ExpPoly p = ExpPoly::term(C(2.0), 2, C(-3.0))
                        .add(ExpPoly::term(C(1.0), 1, C(0.0)))
                        .add(ExpPoly::constant(C(-1.0)));
  const ExpPoly q = p.integrate_zero();
  CHECK(q.eval(0.0) == C(0.0));
  CHECK(q.eval(0.7).real() == doctest::Approx(-0.4030935336121584).epsilon(1e-13));
  CHECK(std::abs(q.eval(0.7).imag()) < 1e-16);
}

TEST_CASE("derivative of integrate_zero returns the integrand") {
  const ExpPoly p = ExpPoly::term(C(1.3, -0.2), 1, C(-0.8, 0.5))
                        .add(ExpPoly::term(C(0.4), 2, C(-2.0)));
  const ExpPoly q = p.integrate_zero();
  const double h = 1e-5;
  for (double t : {0.2, 0.9, 1.7}) {
    const C d = (q.eval(t + h) - q.eval(t - h)) / (2 * h);
    CHECK(std::abs(d - p.eval(t)) < 1e-8);
  }
}

TEST_CASE("eval is linear in the coefficients") {
  const ExpPoly a = ExpPoly::term(C(0.7, 0.1), 1, C(-1.1));
  const ExpPoly b = ExpPoly::term(C(-0.3), 0, C(0.4, -0.6));
  for (double t : {0.1, 0.8, 2.2}) {
    const C lhs = a.add(b.scaled(C(2.0, 1.0))).eval(t);
    const C rhs = a.eval(t) + C(2.0, 1.0) * b.eval(t);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("to_string lists one term per line") {
  const ExpPoly p = ExpPoly::term(C(1.0), 0, C(-1.0)).add(ExpPoly::term(C(2.0), 1, C(0.0)));
  const std::string s = p.to_string();
  CHECK(s.find('\n') != std::string::npos);
  CHECK_FALSE(s.empty());
}
