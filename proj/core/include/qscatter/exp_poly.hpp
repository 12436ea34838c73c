#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qscatter {

// One term c * t^power * exp(rate * t).
struct ExpTerm {
  std::complex<double> coef;
  int power = 0;
  std::complex<double> rate;
};

// Exact symbolic sum of c * t^k * e^{lambda t} terms, closed under addition,
// scalar multiplication, multiplication by e^{mu t}, and integration from 0.
// Kept canonical: terms sorted by (power, Re rate, Im rate), coincident
// (power, rate) pairs merged, negligible coefficients dropped.
class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(std::vector<ExpTerm> terms);

  static ExpPoly zero() { return ExpPoly(); }
  static ExpPoly constant(std::complex<double> c);
  static ExpPoly term(std::complex<double> coef, int power, std::complex<double> rate);

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::complex<double> eval(double t) const;

  // This + other.
  ExpPoly add(const ExpPoly& other) const;
  // This * c.
  ExpPoly scaled(std::complex<double> c) const;
  // This * e^{mu t}.
  ExpPoly mul_exp(std::complex<double> mu) const;
  // q(t) = \int_0^t this(s) ds, q(0) = 0. Stays inside the class (polynomial
  // terms absorb the rate-zero case), so no degenerate-rate poles arise.
  ExpPoly integrate_zero() const;

  // Debug serialization, one term per line; %.17g so values round-trip.
  std::string to_string() const;

 private:
  void canonicalize();

  std::vector<ExpTerm> terms_;
};

}  // namespace qscatter
