#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qscatter/errors.hpp"

namespace qscatter {

// Adaptive Dormand-Prince 5(4) with step-exact output sampling: steps never
// overshoot the next requested time, so samples carry no interpolation error.
// RHS signature: rhs(t, y, dydt) with y, dydt of type std::array<double, N>.
//
// All systems in this toolkit are small (3..32 reals) and smooth; the FSAL
// pair with a standard controller is accurate and cheap at the 1e-10 local
// tolerances the contracts require.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_at(Rhs&& rhs, const std::array<double, N>& y0,
                                                const std::vector<double>& times,
                                                double rel_tol = 1e-10,
                                                double abs_tol = 1e-14) {
  using State = std::array<double, N>;

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // 5th-order minus embedded 4th-order weights.
  constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                   e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  if (times.empty()) return {};
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) throw ValidationError("times", "must be non-decreasing");

  double t = times.front();
  State y = y0;
  std::vector<State> out;
  out.reserve(times.size());
  out.push_back(y);

  std::size_t next = 1;
  while (next < times.size() && times[next] == t) {
    out.push_back(y);
    ++next;
  }
  if (next >= times.size()) return out;

  const double span = times.back() - t;
  if (span <= 0.0) throw ValidationError("times", "must be increasing");
  const double h_floor = 1e-14 * span;
  const long max_steps = 50'000'000;
  long steps = 0;

  State k1, k2, k3, k4, k5, k6, k7, y5, tmp;
  rhs(t, y, k1);
  double h_prop = 0.5 * std::min(span / 100.0, times[next] - t);

  while (next < times.size()) {
    if (h_prop < h_floor)
      throw StiffnessError("step size underflow at t = " + std::to_string(t));
    if (++steps > max_steps) throw StiffnessError("step budget exhausted");

    const double gap = times[next] - t;
    const bool clipped = h_prop >= gap;
    const double h = clipped ? gap : h_prop;

    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y5, k7);

    double err_sq = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double q = e / sc;
      err_sq += q * q;
    }
    const double err = std::sqrt(err_sq / static_cast<double>(N));
    double factor = 0.9 * std::pow(err > 1e-30 ? err : 1e-30, -0.2);
    factor = std::min(5.0, std::max(0.2, factor));

    if (err <= 1.0) {
      t = clipped ? times[next] : t + h;
      y = y5;
      k1 = k7;  // first-same-as-last
      while (next < times.size() && times[next] <= t) {
        out.push_back(y);
        ++next;
      }
      // A clip is an output constraint, not an accuracy signal: keep the
      // controller's proposal. Otherwise let the controller rescale.
      if (!clipped) h_prop = h * factor;
    } else {
      h_prop = h * std::min(factor, 0.9);
    }
  }
  return out;
}

}  // namespace qscatter
