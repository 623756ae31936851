#pragma once

#include "slabdiff/spectral.hpp"

#include <string_view>
#include <vector>

namespace slabdiff {

enum class ExtremumKind { maximum, minimum };
std::string_view to_string(ExtremumKind k) noexcept;

struct ExtremumEvent {
  double v = 0.0;
  ExtremumKind kind = ExtremumKind::maximum;
  double value = 0.0;
  double prominence = 0.0;
};

/// Where the initial mass sits: slab centre (gaussian) or walls (cosh).
enum class EchoSource { center, surface };
std::string_view to_string(EchoSource s) noexcept;

/// Arrival times of the density front at an observation point after
/// successive wall reflections, from ray kinematics at speed c = 1/sqrt(eps).
struct EchoLadder {
  EchoSource source = EchoSource::center;
  double observation_u = 0.0;
  std::vector<double> times;
  double c = 0.0;
};

/// Supported observation points are u = 0 and u = +-1/2.
EchoLadder predict_echo_ladder(EchoSource source, double observation_u,
                               double eps, int count);

inline constexpr double kDefaultCutoff = 1e-3;
inline constexpr double kDefaultRelativeProminence = 1e-3;
inline constexpr std::size_t kSmoothingWindow = 5;
inline constexpr std::size_t kMinTraceSamples = 200;

/// Centred moving average over kSmoothingWindow samples, truncated at the ends.
std::vector<double> smooth_trace(std::span<const double> values);

/// Interior extrema of the smoothed trace at v >= v_min_cutoff whose
/// topographic prominence is at least prominence_threshold. Sorted by v.
std::vector<ExtremumEvent> detect_extrema(const TimeTrace &trace,
                                          double v_min_cutoff,
                                          double prominence_threshold);

enum class Monotonicity { monotone_increasing, monotone_decreasing, non_monotone };
std::string_view to_string(Monotonicity m) noexcept;

/// Monotone when no counter-trend excursion of the smoothed trace exceeds
/// slack times its range.
Monotonicity classify_monotone(const TimeTrace &trace, double v_min_cutoff,
                               double slack = 1e-3);

struct ErrorNorms {
  double l_inf = 0.0;
  double l2 = 0.0; // root-mean-square
  double mass_diff = 0.0;
};

ErrorNorms error_norms(const FieldSlice &a, const FieldSlice &b);

} // namespace slabdiff
