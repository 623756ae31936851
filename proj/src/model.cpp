#include "slabdiff/model.hpp"

#include "slabdiff/error.hpp"

#include <cmath>
#include <string>

namespace slabdiff {

DimensionlessParams DimensionlessParams::from_epsilon(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw InvalidParameter("epsilon must be finite and >= 0, got " +
                           std::to_string(epsilon));
  DimensionlessParams out;
  out.epsilon = epsilon;
  if (epsilon > 0.0)
    out.wave_speed_c = 1.0 / std::sqrt(epsilon);
  return out;
}

DimensionlessParams nondimensionalize(const PhysicalParams &p) {
  if (!(p.thickness_d > 0.0) || !std::isfinite(p.thickness_d))
    throw InvalidParameter("thickness d must be > 0");
  if (!(p.diffusion_D > 0.0) || !std::isfinite(p.diffusion_D))
    throw InvalidParameter("diffusion coefficient D must be > 0");
  if (!(p.relaxation_tau_r >= 0.0) || !std::isfinite(p.relaxation_tau_r))
    throw InvalidParameter("relaxation time tau_r must be >= 0");
  // tau_r / (d^2 / D)
  return DimensionlessParams::from_epsilon(p.relaxation_tau_r * p.diffusion_D /
                                           (p.thickness_d * p.thickness_d));
}

Grid1D Grid1D::uniform(std::size_t count) {
  if (count < 2)
    throw InvalidParameter("uniform grid needs at least 2 points");
  const auto intervals = static_cast<double>(count - 1);
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    // (2i - N) / (2N): mirrored indices give exactly negated values.
    const double num = 2.0 * static_cast<double>(i) - intervals;
    pts[i] = num / (2.0 * intervals);
  }
  return Grid1D(std::move(pts), true, 1.0 / intervals);
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t count) {
  if (count < 2)
    throw InvalidParameter("uniform grid needs at least 2 points");
  if (!(lo < hi) || lo < -0.5 || hi > 0.5)
    throw DomainError("grid bounds must satisfy -1/2 <= lo < hi <= 1/2");
  const auto intervals = static_cast<double>(count - 1);
  const double h = (hi - lo) / intervals;
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i)
    pts[i] = lo + static_cast<double>(i) * h;
  pts.back() = hi;
  return Grid1D(std::move(pts), true, h);
}

Grid1D Grid1D::from_points(std::vector<double> points) {
  if (points.empty())
    throw InvalidParameter("grid must not be empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]) || points[i] < -0.5 || points[i] > 0.5)
      throw DomainError("grid point outside [-1/2, 1/2]");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw InvalidParameter("grid points must be strictly increasing");
  }
  return Grid1D(std::move(points), false, 0.0);
}

TimeGrid TimeGrid::linspace(double start, double stop, std::size_t count) {
  if (count < 1)
    throw InvalidParameter("time grid needs at least 1 point");
  if (count == 1)
    return from_points({start});
  if (!(stop > start))
    throw InvalidParameter("time range must satisfy start < stop");
  std::vector<double> pts(count);
  const auto intervals = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    pts[i] = start + (stop - start) * (static_cast<double>(i) / intervals);
  pts.back() = stop;
  return from_points(std::move(pts));
}

TimeGrid TimeGrid::from_points(std::vector<double> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]) || points[i] < 0.0)
      throw DomainError("time grid values must be finite and >= 0");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw InvalidParameter("time grid must be strictly increasing");
  }
  return TimeGrid(std::move(points));
}

void require_in_slab(double u) {
  if (!(u >= -0.5 && u <= 0.5))
    throw DomainError("coordinate u=" + std::to_string(u) +
                      " outside [-1/2, 1/2]");
}

void require_time(double v) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw DomainError("time v=" + std::to_string(v) + " must be >= 0");
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw InvalidInput("trapezoid: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

} // namespace slabdiff
