#include "qscatter/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qscatter {

namespace {

using Cx = std::complex<double>;

bool rates_close(const Cx& a, const Cx& b) {
  double mag = std::max(1.0, std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) <= 1e-12 * mag;
}

double pow_int(double t, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= t;
  return r;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

ExpPoly::ExpPoly(std::vector<ExpTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

ExpPoly ExpPoly::constant(Cx c) { return term(c, 0, Cx(0.0, 0.0)); }

ExpPoly ExpPoly::term(Cx coef, int power, Cx rate) {
  return ExpPoly(std::vector<ExpTerm>{ExpTerm{coef, power, rate}});
}

void ExpPoly::canonicalize() {
  for (const ExpTerm& t : terms_)
    if (t.power < 0) throw std::invalid_argument("ExpPoly: negative power");

  std::sort(terms_.begin(), terms_.end(), [](const ExpTerm& a, const ExpTerm& b) {
    if (a.power != b.power) return a.power < b.power;
    if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
    return a.rate.imag() < b.rate.imag();
  });

  std::vector<ExpTerm> merged;
  for (const ExpTerm& t : terms_) {
    if (!merged.empty() && merged.back().power == t.power &&
        rates_close(merged.back().rate, t.rate)) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }

  double cmax = 0.0;
  for (const ExpTerm& t : merged) cmax = std::max(cmax, std::abs(t.coef));
  terms_.clear();
  for (const ExpTerm& t : merged)
    if (std::abs(t.coef) > 1e-15 * cmax) terms_.push_back(t);
}

Cx ExpPoly::eval(double t) const {
  Cx sum(0.0, 0.0);
  for (const ExpTerm& term : terms_)
    sum += term.coef * pow_int(t, term.power) * std::exp(term.rate * t);
  return sum;
}

ExpPoly ExpPoly::add(const ExpPoly& other) const {
  std::vector<ExpTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return ExpPoly(std::move(all));
}

ExpPoly ExpPoly::scaled(Cx c) const {
  std::vector<ExpTerm> out = terms_;
  for (ExpTerm& t : out) t.coef *= c;
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::mul_exp(Cx mu) const {
  std::vector<ExpTerm> out = terms_;
  for (ExpTerm& t : out) t.rate += mu;
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::integrate_zero() const {
  std::vector<ExpTerm> out;
  for (const ExpTerm& t : terms_) {
    if (t.rate == Cx(0.0, 0.0)) {
      // \int_0^t c s^k ds = c t^{k+1} / (k+1)
      out.push_back(ExpTerm{t.coef / static_cast<double>(t.power + 1), t.power + 1, t.rate});
      continue;
    }
    // \int_0^t c s^k e^{ls} ds = F(t) - F(0) with
    // F(t) = e^{lt} * sum_{j=0..k} (-1)^{k-j} (k!/j!) t^j / l^{k-j+1}
    const int k = t.power;
    const Cx l = t.rate;
    Cx l_pow = l;  // l^{k-j+1} built downward from j = k
    double sign = 1.0;
    for (int j = k; j >= 0; --j) {
      Cx c = t.coef * sign * (factorial(k) / factorial(j)) / l_pow;
      out.push_back(ExpTerm{c, j, l});
      if (j == 0) out.push_back(ExpTerm{-c, 0, Cx(0.0, 0.0)});  // -F(0)
      l_pow *= l;
      sign = -sign;
    }
  }
  return ExpPoly(std::move(out));
}

std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "  0\n";
  std::string out;
  char buf[160];
  for (const ExpTerm& t : terms_) {
    std::snprintf(buf, sizeof(buf), "  (%.17g,%.17g) t^%d exp((%.17g,%.17g) t)\n",
                  t.coef.real(), t.coef.imag(), t.power, t.rate.real(), t.rate.imag());
    out += buf;
  }
  return out;
}

}  // namespace qscatter
