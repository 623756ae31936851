#pragma once

#include "slabdiff/model.hpp"
#include "slabdiff/profiles.hpp"
#include "slabdiff/spectral.hpp"

#include <vector>

namespace slabdiff {

/// Explicit finite-difference run on nu uniform cells (nu + 1 nodes including
/// both walls).
struct FdConfig {
  int nu = 400;
  double dv = 0.0;
  double v_end = 0.0;
  double eps = 0.0;
  TimeGrid snapshot_times = TimeGrid::from_points({});
};

/// Safety factor applied to the diffusive bound in telegraph mode.
inline constexpr double kTelegraphDiffusiveSafety = 0.9;

/// Largest admissible dv for the grid: 0.5 du^2 for heat, and
/// min(sqrt(eps) du, 0.9 * 0.5 du^2) for the telegraph equation.
double max_stable_dv(int nu, double eps);

/// Step used when none is configured: max_stable_dv capped at 0.45 du^2.
double default_dv(int nu, double eps);

/// Throws ConfigurationError/InvalidParameter when cfg is not runnable.
void validate(const FdConfig &cfg);

/// Forward-Euler/central-difference solution of n_v = n_uu with mirror ghost
/// nodes at both walls. Snapshots are taken at the step boundary nearest to
/// each requested time; FieldSlice::v holds the time actually reached.
std::vector<FieldSlice> fd_solve_heat(const InitialProfile &profile,
                                      const FdConfig &cfg);

/// Three-level explicit scheme for eps n_vv + n_v = n_uu with n_v(0) = 0.
std::vector<FieldSlice> fd_solve_telegraph(const InitialProfile &profile,
                                           const FdConfig &cfg);

/// Trapezoid mass of an FD slice (half weights on the wall nodes); this is
/// the quantity both schemes conserve exactly.
double fd_discrete_mass(const FieldSlice &slice);

} // namespace slabdiff
