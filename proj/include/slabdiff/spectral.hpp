#pragma once

#include "slabdiff/model.hpp"
#include "slabdiff/profiles.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace slabdiff {

enum class Model { parabolic, hyperbolic, wkb, fd };

std::string_view to_string(Model m) noexcept;
Model parse_model(std::string_view name);

/// Sampled n(., v) on a spatial grid.
struct FieldSlice {
  Grid1D grid;
  double v = 0.0;
  std::vector<double> values;
  Model model = Model::parabolic;
};

/// Sampled n(u, .) at a fixed coordinate.
struct TimeTrace {
  double u = 0.0;
  TimeGrid times;
  std::vector<double> values;
  Model model = Model::parabolic;
};

enum class DampingClass { overdamped, critical, underdamped };

std::string_view to_string(DampingClass d) noexcept;

/// Discriminant band |1 - (4 m pi)^2 eps| <= kCriticalTolerance is treated as
/// critical damping.
inline constexpr double kCriticalTolerance = 1e-12;

/// Time factor of one hyperbolic mode, V_m(v) / K_m, with V(0) = 1, V'(0) = 0
/// solving eps V'' + V' + (2 m pi)^2 V = 0.
struct ModeEvolution {
  int m = 1;
  DampingClass damping = DampingClass::overdamped;
  double km = 0.0;
  // Overdamped: real exponents mu2 < mu1 < 0 and amplitudes c1 + c2 = K_m.
  double mu1 = 0.0;
  double mu2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  // Underdamped and critical: envelope exponent -1/(2 eps).
  double sigma = 0.0;
  // Underdamped: angular frequency sqrt((4 m pi)^2 eps - 1) / (2 eps).
  double omega = 0.0;
};

ModeEvolution classify_mode(int m, double km, double eps);

std::vector<ModeEvolution> build_mode_evolutions(double eps,
                                                 const SpectralCoefficients &c);

double hyperbolic_mode_factor(const ModeEvolution &me, double eps, double v);

/// A_m (fast e^{-v/eps} amplitude) and B_m (parabolic-rate amplitude).
struct WkbCoefficients {
  std::vector<double> a;
  std::vector<double> b;
};

/// Throws ResonantMode when |1 - eps (2 m pi)^2| < 1e-9 for some m <= M.
WkbCoefficients wkb_coefficients(const SpectralCoefficients &c, double eps);

/// One of the three series solutions with its per-mode data precomputed.
class SpectralSolution {
public:
  SpectralSolution(Model model, SpectralCoefficients coefficients, double eps);

  double density(double u, double v) const;
  FieldSlice field(const Grid1D &grid, double v) const;
  TimeTrace trace(double u, const TimeGrid &times) const;

  Model model() const noexcept { return model_; }
  double epsilon() const noexcept { return eps_; }
  const SpectralCoefficients &coefficients() const noexcept { return coeffs_; }
  const std::vector<ModeEvolution> &modes() const noexcept { return modes_; }
  const WkbCoefficients &wkb() const noexcept { return wkb_; }

private:
  double evaluate(double u, double v) const;

  Model model_;
  SpectralCoefficients coeffs_;
  double eps_;
  std::vector<ModeEvolution> modes_;
  WkbCoefficients wkb_;
};

double parabolic_density(const SpectralCoefficients &c, double u, double v);
double hyperbolic_density(const SpectralCoefficients &c, double eps, double u,
                          double v);
double wkb_density(const SpectralCoefficients &c, double eps, double u,
                   double v);

/// Short-time oracle: a centred Gaussian convolved with the 1D heat kernel,
/// ignoring the walls. Only valid while 1/sqrt(b) + sqrt(4 v) <= 1/4.
struct FreeSpaceReference {
  double b_effective = 0.0;
  double B = 1.0;

  double operator()(double u) const;
};

inline constexpr double kFreeSpaceSupportLimit = 0.25;

FreeSpaceReference free_space_reference(const Gaussian &profile, double v);

} // namespace slabdiff
