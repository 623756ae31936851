#include "slabdiff/fd.hpp"

#include "slabdiff/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slabdiff {
namespace {

// Snapshot step indices, nearest step boundary to each requested time.
std::vector<long long> snapshot_steps(const FdConfig &cfg) {
  std::vector<long long> steps;
  steps.reserve(cfg.snapshot_times.size());
  for (double v : cfg.snapshot_times.points())
    steps.push_back(std::llround(v / cfg.dv));
  return steps;
}

std::vector<double> initial_nodes(const InitialProfile &profile,
                                  const Grid1D &grid) {
  std::vector<double> n(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    n[i] = evaluate_profile(profile, grid[i]);
  return n;
}

// lap[i] = (n[i+1] + n[i-1]) - 2 n[i] with mirror ghosts n[-1] = n[1] and
// n[N+1] = n[N-1]; written so mirrored nodes see the same operations.
void second_difference(const std::vector<double> &n, std::vector<double> &lap) {
  const std::size_t last = n.size() - 1;
  lap[0] = (n[1] + n[1]) - 2.0 * n[0];
  for (std::size_t i = 1; i < last; ++i)
    lap[i] = (n[i + 1] + n[i - 1]) - 2.0 * n[i];
  lap[last] = (n[last - 1] + n[last - 1]) - 2.0 * n[last];
}

void record(std::vector<FieldSlice> &out, const Grid1D &grid,
            const std::vector<double> &n, long long step, double dv) {
  out.push_back({grid, static_cast<double>(step) * dv, n, Model::fd});
}

} // namespace

double max_stable_dv(int nu, double eps) {
  if (nu < 2)
    throw InvalidParameter("fd grid needs nu >= 2 cells");
  if (!(eps >= 0.0))
    throw InvalidParameter("eps must be >= 0");
  const double du = 1.0 / nu;
  const double diffusive = 0.5 * du * du;
  if (eps == 0.0)
    return diffusive;
  return std::min(std::sqrt(eps) * du, kTelegraphDiffusiveSafety * diffusive);
}

double default_dv(int nu, double eps) {
  const double du = 1.0 / nu;
  return std::min(max_stable_dv(nu, eps),
                  kTelegraphDiffusiveSafety * 0.5 * du * du);
}

void validate(const FdConfig &cfg) {
  if (cfg.nu < 2)
    throw InvalidParameter("fd grid needs nu >= 2 cells");
  if (!(cfg.eps >= 0.0) || !std::isfinite(cfg.eps))
    throw InvalidParameter("fd eps must be >= 0");
  if (!(cfg.dv > 0.0) || !std::isfinite(cfg.dv))
    throw ConfigurationError("fd time step dv must be > 0");
  const double bound = max_stable_dv(cfg.nu, cfg.eps);
  if (cfg.dv > bound) {
    std::ostringstream msg;
    msg << "fd time step dv=" << cfg.dv << " exceeds the stability bound "
        << bound << " for nu=" << cfg.nu << ", eps=" << cfg.eps;
    throw ConfigurationError(msg.str());
  }
  if (!cfg.snapshot_times.empty() && cfg.snapshot_times.points().back() >
                                         cfg.v_end + 0.5 * cfg.dv)
    throw ConfigurationError("snapshot time beyond v_end");
}

std::vector<FieldSlice> fd_solve_heat(const InitialProfile &profile,
                                      const FdConfig &cfg) {
  validate(cfg);
  if (cfg.eps != 0.0)
    throw InvalidParameter("fd_solve_heat expects eps = 0");

  const Grid1D grid = Grid1D::uniform(static_cast<std::size_t>(cfg.nu) + 1);
  const double du = grid.spacing();
  const double ratio = cfg.dv / (du * du);
  const auto steps = snapshot_steps(cfg);

  std::vector<double> n = initial_nodes(profile, grid);
  std::vector<double> lap(n.size());
  std::vector<FieldSlice> out;
  out.reserve(steps.size());

  long long step = 0;
  for (long long target : steps) {
    for (; step < target; ++step) {
      second_difference(n, lap);
      for (std::size_t i = 0; i < n.size(); ++i)
        n[i] += ratio * lap[i];
    }
    record(out, grid, n, step, cfg.dv);
  }
  return out;
}

std::vector<FieldSlice> fd_solve_telegraph(const InitialProfile &profile,
                                           const FdConfig &cfg) {
  if (!(cfg.eps > 0.0))
    throw InvalidParameter("fd_solve_telegraph needs eps > 0");
  validate(cfg);

  const Grid1D grid = Grid1D::uniform(static_cast<std::size_t>(cfg.nu) + 1);
  const double du = grid.spacing();
  const double eps = cfg.eps;
  const double dv = cfg.dv;
  const double ratio = dv * dv / (du * du);
  const auto steps = snapshot_steps(cfg);

  // (eps + dv/2) n+ = dv^2 D2 n + 2 eps n - (eps - dv/2) n-, applied in
  // increment form n+ = n + r (n - n-) + q D2 n. The separate coefficients of
  // n and n- do not sum to one in floating point and would leak mass.
  const double lead = eps + 0.5 * dv;
  const double c_lap = ratio / lead;
  const double c_prev = (eps - 0.5 * dv) / lead;

  std::vector<double> prev = initial_nodes(profile, grid);
  std::vector<double> lap(prev.size());
  std::vector<double> cur(prev.size());
  std::vector<double> next(prev.size());
  std::vector<FieldSlice> out;
  out.reserve(steps.size());

  std::size_t k = 0;
  while (k < steps.size() && steps[k] == 0)
    record(out, grid, prev, steps[k++], dv);
  if (k == steps.size())
    return out;

  // n^1 = n^0 + dv^2/(2 eps) D2 n^0, from n_v(0) = 0 and the PDE at v = 0.
  second_difference(prev, lap);
  const double first = ratio / (2.0 * eps);
  for (std::size_t i = 0; i < cur.size(); ++i)
    cur[i] = prev[i] + first * lap[i];
  long long step = 1;

  for (; k < steps.size(); ++k) {
    for (; step < steps[k]; ++step) {
      second_difference(cur, lap);
      for (std::size_t i = 0; i < cur.size(); ++i)
        next[i] = cur[i] + (c_prev * (cur[i] - prev[i]) + c_lap * lap[i]);
      std::swap(prev, cur);
      std::swap(cur, next);
    }
    record(out, grid, cur, step, dv);
  }
  return out;
}

double fd_discrete_mass(const FieldSlice &slice) {
  return trapezoid(slice.grid.points(), slice.values);
}

} // namespace slabdiff
