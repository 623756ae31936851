#pragma once

#include "slabdiff/profiles.hpp"
#include "slabdiff/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slabdiff {

/// Evenly spaced trace times: `count` points from start to stop inclusive.
struct TimeRange {
  double start = 0.0;
  double stop = 1.0;
  std::size_t count = 2001;
  bool operator==(const TimeRange &) const = default;
  TimeGrid grid() const { return TimeGrid::linspace(start, stop, count); }
};

struct FdOverrides {
  std::optional<int> nu;
  std::optional<double> dv;
  bool operator==(const FdOverrides &) const = default;
};

struct OutputOptions {
  bool csv = true;
  bool svg = false;
  bool events = false;
  /// Adds the u1 = 1/2 - c v front position column to field CSVs.
  bool wavefront = false;
  double v_min_cutoff = 1e-3;
  /// Prominence threshold as a fraction of K0.
  double prominence = 1e-3;
  double monotone_slack = 1e-3;
  bool operator==(const OutputOptions &) const = default;
};

inline constexpr int kDefaultTruncation = 500;
inline constexpr std::size_t kDefaultGridPoints = 1001;
inline constexpr int kDefaultFdCells = 400;

struct Scenario {
  std::string name = "scenario";
  double eps = 0.0;
  InitialProfile profile = Uniform{};
  int truncation_M = kDefaultTruncation;
  std::size_t u_points = kDefaultGridPoints;
  /// Times of the field snapshots.
  std::vector<double> v_list;
  /// Times of the point traces.
  std::optional<TimeRange> v_range;
  std::vector<double> trace_u;
  std::vector<Model> models;
  FdOverrides fd;
  OutputOptions output;

  bool operator==(const Scenario &) const = default;

  Grid1D u_grid() const { return Grid1D::uniform(u_points); }
  bool has(Model m) const;
};

/// Parses the key=value document with [scenario], [profile], [fd] and
/// [output] sections. Unknown keys are errors. Throws ParseError with a line
/// number for syntax problems and ValidationError for inconsistent content.
Scenario parse_scenario(std::string_view text);

/// Canonical document; parse_scenario(serialize(s)) == s.
std::string serialize(const Scenario &s);

/// Throws ValidationError when s violates a Scenario invariant.
void validate(const Scenario &s);

/// FNV-1a 64 of the canonical document, as 16 hex digits.
std::string scenario_hash(const Scenario &s);

/// Built-in reproductions of the four reference figures (1..4).
Scenario figure_preset(int figure);
std::string figure_preset_text(int figure);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

} // namespace slabdiff
