#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace slabdiff::quadrature {

struct Options {
  double abs_tol = 1e-12;
  std::size_t max_evaluations = std::size_t{1} << 20;
  /// The interval is first cut into at least this many equal panels.
  std::size_t initial_panels = 1;
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// Interior `breakpoints` (kinks, jumps) always become panel boundaries.
/// Throws NumericalError when the evaluation budget is exhausted before the
/// error estimate drops below abs_tol.
Result integrate(const std::function<double(double)> &f, double a, double b,
                 const Options &options = {},
                 std::span<const double> breakpoints = {});

} // namespace slabdiff::quadrature
