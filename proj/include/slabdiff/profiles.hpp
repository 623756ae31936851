#pragma once

#include "slabdiff/model.hpp"

#include <string>
#include <variant>
#include <vector>

namespace slabdiff {

/// B sqrt(b/pi) exp(-b u^2): mass concentrated at the slab centre.
struct Gaussian {
  double b = 100.0;
  double B = 1.0;
  bool operator==(const Gaussian &) const = default;
};

/// (A s / 2) cosh(s u) / sinh(s / 2): mass concentrated at both walls.
struct SurfaceCosh {
  double s = 10.0;
  double A = 1.0;
  bool operator==(const SurfaceCosh &) const = default;
};

struct Uniform {
  double level = 1.0;
  bool operator==(const Uniform &) const = default;
};

/// offset + amplitude cos(2 m pi u); offset >= |amplitude| keeps it >= 0.
struct CosineMode {
  int m = 1;
  double offset = 1.0;
  double amplitude = 1.0;
  bool operator==(const CosineMode &) const = default;
};

/// Piecewise-linear profile. Always even: construction replaces the data by
/// the average of n(u) and n(-u) on the mirrored union of the nodes.
class Tabulated {
public:
  /// Grid must span [-1/2, 1/2]; values must be >= 0.
  Tabulated(const Grid1D &grid, std::vector<double> values);

  const Grid1D &grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  /// Largest |n(u) - n(-u)| / 2 removed by symmetrization.
  double asymmetry_removed() const noexcept { return asymmetry_; }

  double operator()(double u) const;

  bool operator==(const Tabulated &o) const {
    return grid_ == o.grid_ && values_ == o.values_;
  }

private:
  Grid1D grid_;
  std::vector<double> values_;
  double asymmetry_ = 0.0;
};

using InitialProfile =
    std::variant<Gaussian, SurfaceCosh, Uniform, CosineMode, Tabulated>;

/// Largest parameters accepted before a profile counts as a delta limit.
inline constexpr double kMaxGaussianWidthParam = 1e6;
inline constexpr double kMaxSurfaceSharpness = 1e4;

/// Throws InvalidParameter when a profile violates its invariants.
void validate(const InitialProfile &p);

std::string profile_tag(const InitialProfile &p);

/// n0(u); throws DomainError for u outside [-1/2, 1/2].
double evaluate_profile(const InitialProfile &p, double u);

/// K0 and K_m (m = 1..M) of the cosine expansion of n0 on the slab.
struct SpectralCoefficients {
  double k0 = 0.0;
  std::vector<double> k; // k[m - 1] = K_m
  std::string profile_tag;

  int truncation() const noexcept { return static_cast<int>(k.size()); }
  double km(int m) const { return k.at(static_cast<std::size_t>(m - 1)); }
  /// |K_M|, the size of the last retained term.
  double tail() const noexcept { return k.empty() ? 0.0 : std::abs(k.back()); }
};

struct CoefficientOptions {
  double abs_tol = 1e-12;
  std::size_t max_evaluations = std::size_t{1} << 20;
};

/// Adaptive quadrature of K0 = int n0 du and K_m = 2 int n0 cos(2 m pi u) du.
SpectralCoefficients compute_coefficients(const InitialProfile &p, int M,
                                          const CoefficientOptions &opt = {});

/// Coefficients given directly (tests, bindings); no quadrature involved.
SpectralCoefficients make_coefficients(double k0, std::vector<double> k,
                                       std::string tag = "explicit");

/// Mass n_eq the profile relaxes to.
inline double equilibrium_density(const SpectralCoefficients &c) {
  return c.k0;
}

/// Closed-form K_m for the surface profile: 2 A s^2 (-1)^m / ((2 m pi)^2 + s^2).
double surface_cosh_coefficient(const SurfaceCosh &p, int m);

/// K0 + sum K_m cos(2 m pi u), summed from the highest mode down.
double reconstruct(const SpectralCoefficients &c, double u);

} // namespace slabdiff
