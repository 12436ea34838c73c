#pragma once

#include <complex>

namespace qscatter::detail {

// (e^{l1 t} - e^{l2 t}) / (l1 - l2), with the removable l2 -> l1 limit taken
// through a short series once |l1 - l2| falls under `tol`: the limit is
// t e^{l1 t}, and the first-order correction in w = (l2 - l1) t keeps the
// branch continuous to O(w^3).
inline std::complex<double> exp_diff_ratio(std::complex<double> l1, std::complex<double> l2,
                                           double t, double tol) {
  const std::complex<double> d = l1 - l2;
  if (std::abs(d) > tol)
    return (std::exp(l1 * t) - std::exp(l2 * t)) / d;
  const std::complex<double> w = -d * t;  // (l2 - l1) t
  return t * std::exp(l1 * t) * (1.0 + w * (0.5 + w / 6.0));
}

}  // namespace qscatter::detail
