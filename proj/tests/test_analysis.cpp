#include "oracles.hpp"
#include "slabdiff/analysis.hpp"
#include "slabdiff/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

using namespace slabdiff;

namespace {

TimeTrace synthetic(const std::function<double(double)> &f, std::size_t n = 1001,
                    double stop = 1.0) {
  TimeTrace t{0.0, TimeGrid::linspace(0.0, stop, n), {}, Model::hyperbolic};
  for (double v : t.times.points())
    t.values.push_back(f(v));
  return t;
}

const SpectralCoefficients &gaussian() {
  static const auto c = compute_coefficients(Gaussian{100.0, 1.0}, 500);
  return c;
}

const TimeGrid &trace_times() {
  static const auto t = TimeGrid::linspace(0.0, 1.0, 2001);
  return t;
}

} // namespace

TEST_CASE("echo ladder: figure guide lines") {
  const auto wall = predict_echo_ladder(EchoSource::center, 0.5, 0.13, 3);
  REQUIRE(wall.times.size() == 3);
  CHECK(wall.times[0] == doctest::Approx(0.18027756377319946466).epsilon(1e-14));
  CHECK(wall.times[1] == doctest::Approx(0.54083269131959839).epsilon(1e-14));
  CHECK(wall.times[2] == doctest::Approx(0.90138781886599732).epsilon(1e-14));
  CHECK(wall.c == doctest::Approx(2.7735009811261456101).epsilon(1e-14));

  const auto mid = predict_echo_ladder(EchoSource::center, 0.0, 0.13, 2);
  CHECK(mid.times[0] == doctest::Approx(0.36055512754639892931).epsilon(1e-14));
  CHECK(mid.times[1] == doctest::Approx(0.72111025509279785862).epsilon(1e-14));

  const auto surf_wall = predict_echo_ladder(EchoSource::surface, 0.5, 0.13, 3);
  CHECK(surf_wall.times[2] == doctest::Approx(3.0 * std::sqrt(0.13)));
  const auto surf_mid = predict_echo_ladder(EchoSource::surface, 0.0, 0.13, 3);
  CHECK(surf_mid.times[1] == doctest::Approx(1.5 * std::sqrt(0.13)));

  CHECK(predict_echo_ladder(EchoSource::center, -0.5, 1.0, 1).times[0] == 0.5);
}

TEST_CASE("echo ladder: scales with sqrt(eps)") {
  for (double eps : {1e-4, 0.01, 0.13, 0.7}) {
    for (auto src : {EchoSource::center, EchoSource::surface}) {
      for (double u : {0.0, 0.5}) {
        const auto a = predict_echo_ladder(src, u, eps, 6);
        const auto b = predict_echo_ladder(src, u, 2.0 * eps, 6);
        for (std::size_t i = 0; i < a.times.size(); ++i) {
          CHECK(std::abs(b.times[i] - std::sqrt(2.0) * a.times[i]) <=
                4e-16 * b.times[i]);
          if (i > 0)
            CHECK(a.times[i] > a.times[i - 1]);
        }
      }
    }
  }
}

TEST_CASE("echo ladder: invalid requests") {
  CHECK_THROWS_AS(predict_echo_ladder(EchoSource::center, 0.25, 0.13, 3),
                  InvalidParameter);
  CHECK_THROWS_AS(predict_echo_ladder(EchoSource::center, 0.5, 0.0, 3),
                  InvalidParameter);
  CHECK_THROWS_AS(predict_echo_ladder(EchoSource::center, 0.5, 0.1, 0),
                  InvalidParameter);
}

TEST_CASE("detect_extrema: trivial and invalid traces") {
  CHECK(detect_extrema(synthetic([](double) { return 2.0; }), 0.0, 0.0).empty());
  CHECK(detect_extrema(synthetic([](double v) { return v * v; }), 0.0, 0.0).empty());
  CHECK_THROWS_AS(detect_extrema(synthetic([](double v) { return v; }, 150), 0.0, 0.0),
                  InvalidInput);
}

TEST_CASE("detect_extrema: damped oscillation") {
  const auto f = [](double v) {
    return 1.0 + std::exp(-v) * std::cos(4.0 * std::numbers::pi * v);
  };
  const auto trace = synthetic(f, 3601, 0.9);
  const auto events = detect_extrema(trace, 1e-3, 1e-3);
  // Extrema of e^{-v} cos(4 pi v): tan(4 pi v) = -1/(4 pi).
  const double shift = std::atan(1.0 / (4.0 * std::numbers::pi)) / (4.0 * std::numbers::pi);
  REQUIRE(events.size() == 3);
  CHECK(events[0].kind == ExtremumKind::minimum);
  CHECK(events[0].v == doctest::Approx(0.25 - shift).epsilon(2e-3));
  CHECK(events[1].kind == ExtremumKind::maximum);
  CHECK(events[1].v == doctest::Approx(0.5 - shift).epsilon(2e-3));
  CHECK(events[2].kind == ExtremumKind::minimum);
  for (std::size_t i = 1; i < events.size(); ++i)
    CHECK(events[i].v > events[i - 1].v);

  // Brute-force oracle agrees on the maxima locations.
  const auto raw = oracle::strict_maxima(trace.values);
  REQUIRE(raw.size() == 1);
  CHECK(std::abs(trace.times[raw[0]] - events[1].v) < 2e-3);
}

TEST_CASE("detect_extrema: prominence threshold and cutoff") {
  const auto f = [](double v) {
    return std::sin(2.0 * std::numbers::pi * v) +
           1e-2 * std::sin(2.0 * std::numbers::pi * 40.0 * v);
  };
  const auto trace = synthetic(f, 4001);
  const auto big = detect_extrema(trace, 0.0, 0.5);
  REQUIRE(big.size() == 2);
  CHECK(big[0].prominence > 0.5);
  CHECK(detect_extrema(trace, 0.0, 1e-6).size() > 2);
  // Prominence is measured inside the window, so the trough at 0.75 only rises
  // about 0.59 above its left edge at v = 0.6.
  CHECK(detect_extrema(trace, 0.6, 0.3).size() == 1);
}

TEST_CASE("detect_extrema: shift invariant and scale equivariant") {
  const auto f = [](double v) {
    return std::exp(-2.0 * v) * std::sin(9.0 * v) + 0.3 * v;
  };
  const auto base = synthetic(f, 2001);
  const auto ev = detect_extrema(base, 1e-3, 1e-3);
  REQUIRE(!ev.empty());
  for (double shift : {-3.0, 0.5, 100.0}) {
    auto t = base;
    for (double &x : t.values)
      x += shift;
    const auto moved = detect_extrema(t, 1e-3, 1e-3);
    REQUIRE(moved.size() == ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
      CHECK(moved[i].v == ev[i].v);
      CHECK(moved[i].prominence == doctest::Approx(ev[i].prominence).epsilon(1e-9));
    }
  }
  for (double scale : {0.01, 7.0}) {
    auto t = base;
    for (double &x : t.values)
      x *= scale;
    const auto scaled = detect_extrema(t, 1e-3, 1e-3 * scale);
    REQUIRE(scaled.size() == ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i) {
      CHECK(scaled[i].v == ev[i].v);
      CHECK(scaled[i].value == doctest::Approx(scale * ev[i].value));
      CHECK(scaled[i].prominence == doctest::Approx(scale * ev[i].prominence));
    }
  }
}

TEST_CASE("centre-source scenario: parabolic monotone, hyperbolic echoes") {
  const auto &c = gaussian();
  const SpectralSolution par(Model::parabolic, c, 0.0);
  const SpectralSolution hyp(Model::hyperbolic, c, 0.13);
  const double threshold = kDefaultRelativeProminence * c.k0;

  const auto par_wall = par.trace(0.5, trace_times());
  CHECK(detect_extrema(par_wall, kDefaultCutoff, threshold).empty());
  CHECK(classify_monotone(par_wall, kDefaultCutoff) ==
        Monotonicity::monotone_increasing);
  CHECK(classify_monotone(par.trace(0.0, trace_times()), kDefaultCutoff) ==
        Monotonicity::monotone_decreasing);

  const auto hyp_wall = hyp.trace(0.5, trace_times());
  CHECK(classify_monotone(hyp_wall, kDefaultCutoff) == Monotonicity::non_monotone);
  std::vector<double> maxima;
  for (const auto &e : detect_extrema(hyp_wall, kDefaultCutoff, threshold))
    if (e.kind == ExtremumKind::maximum)
      maxima.push_back(e.v);
  REQUIRE(maxima.size() >= 2);
  CHECK(std::abs(maxima[0] / 0.18027756377319946 - 1.0) <= 0.2);
  CHECK(std::abs(maxima[1] / 0.54083269131959839 - 1.0) <= 0.2);
}

TEST_CASE("surface-source scenario: centre sees the first front at v1") {
  const auto c = compute_coefficients(SurfaceCosh{10.0, 1.0}, 500);
  const SpectralSolution hyp(Model::hyperbolic, c, 0.13);
  const auto events = detect_extrema(hyp.trace(0.0, trace_times()), kDefaultCutoff,
                                     kDefaultRelativeProminence * c.k0);
  const auto first = std::find_if(events.begin(), events.end(), [](const auto &e) {
    return e.kind == ExtremumKind::maximum;
  });
  REQUIRE(first != events.end());
  CHECK(std::abs(first->v / (0.5 * std::sqrt(0.13)) - 1.0) <= 0.2);
}

TEST_CASE("error norms") {
  const auto grid = Grid1D::uniform(101);
  FieldSlice a{grid, 0.1, std::vector<double>(101, 1.0), Model::parabolic};
  auto b = a;
  const auto zero = error_norms(a, b);
  CHECK(zero.l_inf == 0.0);
  CHECK(zero.l2 == 0.0);
  CHECK(zero.mass_diff == 0.0);

  for (double &x : b.values)
    x += 1e-3;
  const auto shifted = error_norms(a, b);
  CHECK(shifted.l_inf == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(shifted.l2 == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(shifted.mass_diff == doctest::Approx(1e-3).epsilon(1e-12));

  auto other_grid = a;
  other_grid.grid = Grid1D::uniform(101 + 0);
  CHECK_NOTHROW(error_norms(a, other_grid));
  other_grid.grid = Grid1D::uniform(51);
  other_grid.values.resize(51);
  CHECK_THROWS_AS(error_norms(a, other_grid), InvalidInput);
  auto later = a;
  later.v = 0.2;
  CHECK_THROWS_AS(error_norms(a, later), InvalidInput);

  const auto &c = gaussian();
  const auto fine = Grid1D::uniform(1001);
  const auto p = SpectralSolution(Model::parabolic, c, 0.0).field(fine, 1.0);
  const auto h = SpectralSolution(Model::hyperbolic, c, 0.13).field(fine, 1.0);
  CHECK(error_norms(p, h).l_inf < 0.05 * c.k0);
}
