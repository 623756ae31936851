#pragma once

#include <optional>
#include <span>
#include <vector>

namespace slabdiff {

/// Slab thickness d, diffusion coefficient D and flux relaxation time tau_r.
struct PhysicalParams {
  double thickness_d = 1.0;
  double diffusion_D = 1.0;
  double relaxation_tau_r = 0.0;
};

/// epsilon = tau_r / tau_D with tau_D = d^2 / D. The dimensionless wave speed
/// c = 1/sqrt(epsilon) exists only in the hyperbolic case.
struct DimensionlessParams {
  double epsilon = 0.0;
  std::optional<double> wave_speed_c;

  static DimensionlessParams from_epsilon(double epsilon);
  bool hyperbolic() const noexcept { return epsilon > 0.0; }
};

DimensionlessParams nondimensionalize(const PhysicalParams &p);

/// Sorted set of reduced coordinates u in [-1/2, 1/2].
class Grid1D {
public:
  /// `count` equally spaced points spanning the whole slab, mirror-exact
  /// (points[i] == -points[count-1-i] bitwise).
  static Grid1D uniform(std::size_t count);
  static Grid1D uniform(double lo, double hi, std::size_t count);
  static Grid1D from_points(std::vector<double> points);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const noexcept { return points_[i]; }
  bool is_uniform() const noexcept { return uniform_; }
  /// Spacing between neighbours; zero for non-uniform grids.
  double spacing() const noexcept { return spacing_; }

  bool operator==(const Grid1D &) const = default;

private:
  Grid1D(std::vector<double> points, bool uniform, double spacing)
      : points_(std::move(points)), uniform_(uniform), spacing_(spacing) {}

  std::vector<double> points_;
  bool uniform_ = false;
  double spacing_ = 0.0;
};

/// Strictly increasing reduced times v >= 0.
class TimeGrid {
public:
  static TimeGrid linspace(double start, double stop, std::size_t count);
  static TimeGrid from_points(std::vector<double> points);

  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const noexcept { return points_[i]; }
  bool empty() const noexcept { return points_.empty(); }

  bool operator==(const TimeGrid &) const = default;

private:
  explicit TimeGrid(std::vector<double> points) : points_(std::move(points)) {}
  std::vector<double> points_;
};

void require_in_slab(double u);
void require_time(double v);

/// Composite trapezoid integral of samples over a grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

} // namespace slabdiff
