#pragma once

#include "slabdiff/compensated_sum.hpp"

#include <cmath>
#include <numbers>

namespace slabdiff::detail {

/// cos(2 m pi u) with the phase reduced to [-1/2, 1/2] first. Exactly even
/// in u and exactly periodic on grids where m u is representable.
inline double cos_mode(int m, double u) noexcept {
  double phase = static_cast<double>(m) * u;
  phase -= std::nearbyint(phase);
  return std::cos(2.0 * std::numbers::pi * phase);
}

/// k0 + sum_{m=M..1} term(m), highest mode first, compensated.
template <typename Term>
double sum_modes(double k0, int truncation, Term &&term) {
  CompensatedSum acc;
  for (int m = truncation; m >= 1; --m)
    acc += term(m);
  acc += k0;
  return acc.value();
}

inline double mode_wavenumber_sq(int m) noexcept {
  const double alpha = 2.0 * std::numbers::pi * static_cast<double>(m);
  return alpha * alpha;
}

} // namespace slabdiff::detail
