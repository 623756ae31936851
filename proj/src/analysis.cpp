#include "slabdiff/analysis.hpp"

#include "slabdiff/error.hpp"

#include <algorithm>
#include <cmath>

namespace slabdiff {

std::string_view to_string(ExtremumKind k) noexcept {
  return k == ExtremumKind::maximum ? "maximum" : "minimum";
}

std::string_view to_string(EchoSource s) noexcept {
  return s == EchoSource::center ? "center" : "surface";
}

std::string_view to_string(Monotonicity m) noexcept {
  switch (m) {
  case Monotonicity::monotone_increasing:
    return "monotone_increasing";
  case Monotonicity::monotone_decreasing:
    return "monotone_decreasing";
  case Monotonicity::non_monotone:
    return "non_monotone";
  }
  return "unknown";
}

EchoLadder predict_echo_ladder(EchoSource source, double observation_u,
                               double eps, int count) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidParameter("echo ladder needs eps > 0");
  if (count < 1)
    throw InvalidParameter("echo ladder needs count >= 1");
  const bool at_wall = std::abs(observation_u) == 0.5;
  const bool at_centre = observation_u == 0.0;
  if (!at_wall && !at_centre)
    throw InvalidParameter("echo ladder is defined for u = 0 and u = +-1/2 only");

  EchoLadder out;
  out.source = source;
  out.observation_u = observation_u;
  out.c = 1.0 / std::sqrt(eps);
  // Half-width crossing time and full-width crossing time.
  const double v1 = 0.5 * std::sqrt(eps);
  const double v2 = std::sqrt(eps);
  // Centre->wall and wall->centre paths cross half the slab first and then
  // the full width per reflection; same-side paths cross the full width.
  const bool odd_ladder = (source == EchoSource::center) == at_wall;
  out.times.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j)
    out.times.push_back(odd_ladder ? (2.0 * j + 1.0) * v1 : (j + 1.0) * v2);
  return out;
}

std::vector<double> smooth_trace(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t half = kSmoothingWindow / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j)
      acc += values[j];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

namespace {

void require_trace(const TimeTrace &trace, double v_min_cutoff) {
  if (trace.values.size() != trace.times.size())
    throw InvalidInput("trace values do not match its time grid");
  if (trace.values.size() < kMinTraceSamples)
    throw InvalidInput("trace needs at least 200 samples, got " +
                       std::to_string(trace.values.size()));
  if (!(v_min_cutoff >= 0.0))
    throw InvalidParameter("v_min_cutoff must be >= 0");
}

std::size_t first_index_at_or_after(const TimeGrid &times, double v) {
  const auto pts = times.points();
  return static_cast<std::size_t>(
      std::lower_bound(pts.begin(), pts.end(), v) - pts.begin());
}

// Prominence of the peak at index `peak` of s within [lo, hi].
double prominence(const std::vector<double> &s, std::size_t lo, std::size_t hi,
                  std::size_t peak) {
  const double top = s[peak];
  double left_min = top;
  for (std::size_t j = peak; j-- > lo;) {
    if (s[j] > top)
      break;
    left_min = std::min(left_min, s[j]);
  }
  double right_min = top;
  for (std::size_t j = peak + 1; j <= hi; ++j) {
    if (s[j] > top)
      break;
    right_min = std::min(right_min, s[j]);
  }
  return top - std::max(left_min, right_min);
}

// Local maxima of s strictly inside (lo, hi); plateaus report their middle.
std::vector<std::size_t> local_maxima(const std::vector<double> &s,
                                      std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> peaks;
  std::size_t i = lo + 1;
  while (i < hi) {
    if (s[i] > s[i - 1]) {
      std::size_t run_end = i;
      while (run_end + 1 < hi && s[run_end + 1] == s[i])
        ++run_end;
      if (s[run_end + 1] < s[i])
        peaks.push_back((i + run_end) / 2);
      i = run_end + 1;
    } else {
      ++i;
    }
  }
  return peaks;
}

} // namespace

std::vector<ExtremumEvent> detect_extrema(const TimeTrace &trace,
                                          double v_min_cutoff,
                                          double prominence_threshold) {
  require_trace(trace, v_min_cutoff);
  const std::vector<double> s = smooth_trace(trace.values);
  const std::size_t lo = first_index_at_or_after(trace.times, v_min_cutoff);
  const std::size_t hi = s.size() - 1;
  std::vector<ExtremumEvent> events;
  if (lo + 2 > hi)
    return events;

  std::vector<double> flipped(s.size());
  std::transform(s.begin(), s.end(), flipped.begin(),
                 [](double x) { return -x; });

  for (const auto kind : {ExtremumKind::maximum, ExtremumKind::minimum}) {
    const auto &signal = kind == ExtremumKind::maximum ? s : flipped;
    for (std::size_t p : local_maxima(signal, lo, hi)) {
      const double prom = prominence(signal, lo, hi, p);
      if (prom >= prominence_threshold)
        events.push_back({trace.times[p], kind, s[p], prom});
    }
  }
  std::sort(events.begin(), events.end(),
            [](const ExtremumEvent &a, const ExtremumEvent &b) {
              return a.v < b.v;
            });
  return events;
}

Monotonicity classify_monotone(const TimeTrace &trace, double v_min_cutoff,
                               double slack) {
  require_trace(trace, v_min_cutoff);
  if (!(slack >= 0.0))
    throw InvalidParameter("slack must be >= 0");
  const std::vector<double> s = smooth_trace(trace.values);
  const std::size_t lo = first_index_at_or_after(trace.times, v_min_cutoff);
  if (lo >= s.size())
    throw InvalidInput("no samples at or after v_min_cutoff");

  double lowest = s[lo];
  double highest = s[lo];
  double worst_drop = 0.0; // largest fall after a running maximum
  double worst_rise = 0.0; // largest rise after a running minimum
  for (std::size_t i = lo; i < s.size(); ++i) {
    highest = std::max(highest, s[i]);
    lowest = std::min(lowest, s[i]);
    worst_drop = std::max(worst_drop, highest - s[i]);
    worst_rise = std::max(worst_rise, s[i] - lowest);
  }
  const double allowed = slack * (highest - lowest);
  if (s.back() >= s[lo])
    return worst_drop <= allowed ? Monotonicity::monotone_increasing
                                 : Monotonicity::non_monotone;
  return worst_rise <= allowed ? Monotonicity::monotone_decreasing
                               : Monotonicity::non_monotone;
}

ErrorNorms error_norms(const FieldSlice &a, const FieldSlice &b) {
  if (!(a.grid == b.grid))
    throw InvalidInput("error_norms: slices live on different grids");
  if (std::abs(a.v - b.v) > 1e-12)
    throw InvalidInput("error_norms: slices are at different times");
  if (a.values.size() != a.grid.size() || b.values.size() != b.grid.size())
    throw InvalidInput("error_norms: values do not match grid");
  ErrorNorms out;
  double sq = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = std::abs(a.values[i] - b.values[i]);
    out.l_inf = std::max(out.l_inf, d);
    sq += d * d;
  }
  out.l2 = std::sqrt(sq / static_cast<double>(a.values.size()));
  out.mass_diff = std::abs(trapezoid(a.grid.points(), a.values) -
                           trapezoid(b.grid.points(), b.values));
  return out;
}

} // namespace slabdiff
