#include "oracles.hpp"
#include "slabdiff/error.hpp"
#include "slabdiff/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace slabdiff;

namespace {

constexpr double kPi = std::numbers::pi;

const SpectralCoefficients &gaussian500() {
  static const auto c = compute_coefficients(Gaussian{100.0, 1.0}, 500);
  return c;
}

const SpectralCoefficients &surface500() {
  static const auto c = compute_coefficients(SurfaceCosh{10.0, 1.0}, 500);
  return c;
}

double alpha2(int m) { return 4.0 * kPi * kPi * m * m; }

} // namespace

TEST_CASE("parabolic: constant and single-mode series") {
  const auto flat = make_coefficients(1.0, std::vector<double>(20, 0.0));
  CHECK(parabolic_density(flat, 0.3, 0.7) == 1.0);

  const auto one = make_coefficients(1.0, {1.0});
  CHECK(parabolic_density(one, 0.0, 0.1) ==
        doctest::Approx(1.0192963029110167764).epsilon(1e-14));
}

TEST_CASE("parabolic: gaussian at v = 10 is at equilibrium") {
  const auto &c = gaussian500();
  for (double u : {-0.5, 0.0, 0.2, 0.5})
    CHECK(std::abs(parabolic_density(c, u, 10.0) - c.k0) < 1e-100);
}

TEST_CASE("parabolic: matches an uncompensated reference sum") {
  const auto &c = gaussian500();
  for (double v : {1e-4, 1e-3, 0.05})
    for (double u : {0.0, 0.13, 0.5}) {
      const double ref = oracle::cosine_series(
          c.k0, c.k, u, [v](int m) { return std::exp(-alpha2(m) * v); });
      CHECK(std::abs(parabolic_density(c, u, v) - ref) < 1e-12);
    }
}

TEST_CASE("mode classification") {
  SUBCASE("eps = 0.13 makes m = 1 underdamped") {
    const auto me = classify_mode(1, 1.0, 0.13);
    CHECK(me.damping == DampingClass::underdamped);
    CHECK(me.omega == doctest::Approx(16.996683088469058341).epsilon(1e-13));
    CHECK(me.sigma == doctest::Approx(-1.0 / 0.26).epsilon(1e-15));
  }
  SUBCASE("zero discriminant is critical") {
    const double eps = 1.0 / (4.0 * alpha2(1));
    const auto me = classify_mode(1, 1.0, eps);
    CHECK(me.damping == DampingClass::critical);
    CHECK(me.sigma == doctest::Approx(-1.0 / (2.0 * eps)));
  }
  SUBCASE("tiny eps is overdamped with mu1 close to -(2 pi)^2") {
    const auto me = classify_mode(1, 2.0, 1e-8);
    CHECK(me.damping == DampingClass::overdamped);
    CHECK(me.mu1 == doctest::Approx(-alpha2(1)).epsilon(1e-3));
    CHECK(me.mu2 < me.mu1);
    CHECK(me.mu1 < 0.0);
    CHECK(me.c1 + me.c2 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(me.mu1 * me.c1 + me.mu2 * me.c2) <
          1e-14 * std::abs(me.mu2 * me.c2));
  }
  SUBCASE("threshold m > 1/(4 pi sqrt(eps))") {
    const double eps = 1e-4;
    const auto modes = build_mode_evolutions(
        eps, make_coefficients(1.0, std::vector<double>(20, 1.0)));
    const double threshold = 1.0 / (4.0 * kPi * std::sqrt(eps));
    for (const auto &me : modes)
      CHECK((me.damping == DampingClass::underdamped) == (me.m > threshold));
  }
  CHECK_THROWS_AS(classify_mode(1, 1.0, 0.0), InvalidParameter);
}

TEST_CASE("mode factor: initial conditions in every regime") {
  const double crit = 1.0 / (4.0 * alpha2(1));
  for (double eps : {0.13, crit, 1e-3, 1e-8}) {
    const auto me = classify_mode(1, 1.0, eps);
    CHECK(hyperbolic_mode_factor(me, eps, 0.0) == 1.0);
    const double h = 1e-9;
    const double slope = (hyperbolic_mode_factor(me, eps, h) - 1.0) / h;
    // V'(0) = 0, so the forward difference is h V''(0) / 2 = -h alpha^2 / (2 eps).
    CHECK(std::abs(slope) <= 0.51 * h * alpha2(1) / eps + 1e-6);
  }
}

TEST_CASE("mode factor: critical closed form") {
  const double eps = 1.0 / (4.0 * alpha2(1));
  const auto me = classify_mode(1, 1.0, eps);
  CHECK(hyperbolic_mode_factor(me, eps, 2.0 * eps) ==
        doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("mode factor: small eps reproduces the parabolic decay") {
  const auto me = classify_mode(1, 1.0, 1e-8);
  const double parabolic = std::exp(-alpha2(1) * 0.1);
  CHECK(hyperbolic_mode_factor(me, 1e-8, 0.1) ==
        doctest::Approx(parabolic).epsilon(1e-4));
}

TEST_CASE("mode factor: against high-precision ODE solutions") {
  struct Case {
    double eps;
    int m;
    double v;
    double expect;
  };
  // Frozen from a 40-digit Taylor ODE integration.
  const Case cases[] = {{0.13, 1, 0.2, -0.47479066816685748195},
                        {0.13, 7, 0.35, 0.059476722604825634275},
                        {0.001, 1, 0.05, 0.13334793881099641329},
                        {0.001, 10, 0.01, 0.0069069401358224251855}};
  for (const auto &c : cases) {
    const auto me = classify_mode(c.m, 1.0, c.eps);
    CHECK(std::abs(hyperbolic_mode_factor(me, c.eps, c.v) - c.expect) < 1e-12);
  }
}

TEST_CASE("mode factor: property check against RK4 across regimes") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_eps(-4.0, 0.0);
  std::uniform_int_distribution<int> mode(1, 30);
  std::uniform_real_distribution<double> time(0.0, 0.3);
  for (int trial = 0; trial < 60; ++trial) {
    const double eps = std::pow(10.0, log_eps(rng));
    const int m = mode(rng);
    const double v = time(rng);
    const auto me = classify_mode(m, 1.0, eps);
    // Step small against both the fast scale eps and the oscillation period.
    const double rate = std::max(1.0 / eps, std::sqrt(alpha2(m) / eps));
    const int steps = std::max(200, static_cast<int>(200.0 * rate * v));
    const double ref = oracle::mode_factor_rk4(eps, alpha2(m), v, steps);
    CHECK(std::abs(hyperbolic_mode_factor(me, eps, v) - ref) < 1e-8);
  }
}

TEST_CASE("mode factor: near-critical modes are continuous") {
  const double crit = 1.0 / (4.0 * alpha2(1));
  const double v = 0.01;
  const double at = hyperbolic_mode_factor(classify_mode(1, 1.0, crit), crit, v);
  for (double rel : {1e-10, 1e-8, 1e-6}) {
    for (double sign : {-1.0, 1.0}) {
      const double eps = crit * (1.0 + sign * rel);
      const auto me = classify_mode(1, 1.0, eps);
      CHECK(me.damping != DampingClass::critical);
      CHECK(std::abs(hyperbolic_mode_factor(me, eps, v) - at) < 1e-5);
    }
  }
}

TEST_CASE("hyperbolic: constant series and shared reconstruction at v = 0") {
  const auto flat = make_coefficients(1.0, std::vector<double>(30, 0.0));
  CHECK(hyperbolic_density(flat, 0.13, 0.2, 0.4) == 1.0);

  const SpectralSolution par(Model::parabolic, gaussian500(), 0.0);
  const SpectralSolution hyp(Model::hyperbolic, gaussian500(), 0.13);
  for (double u : {-0.5, -0.2, 0.0, 0.31, 0.5}) {
    CHECK(hyp.density(u, 0.0) == par.density(u, 0.0));
    CHECK(par.density(u, 0.0) == reconstruct(gaussian500(), u));
  }
  CHECK_THROWS_AS(SpectralSolution(Model::hyperbolic, gaussian500(), 0.0),
                  InvalidParameter);
}

TEST_CASE("hyperbolic: wall trace peaks at odd multiples of v1") {
  const SpectralSolution hyp(Model::hyperbolic, gaussian500(), 0.13);
  const auto trace = hyp.trace(0.5, TimeGrid::linspace(0.0, 1.0, 2001));
  std::vector<double> peaks;
  for (std::size_t i : oracle::strict_maxima(trace.values))
    if (trace.times[i] > 1e-3)
      peaks.push_back(trace.times[i]);
  REQUIRE(peaks.size() >= 3);
  const double v1 = 0.5 * std::sqrt(0.13);
  CHECK(peaks[0] == doctest::Approx(v1).epsilon(0.03));
  CHECK(peaks[1] == doctest::Approx(3.0 * v1).epsilon(0.03));
  CHECK(peaks[2] == doctest::Approx(5.0 * v1).epsilon(0.03));
}

TEST_CASE("wkb coefficients") {
  const auto &c = gaussian500();
  SUBCASE("eps = 0 is the parabolic split") {
    const auto w = wkb_coefficients(c, 0.0);
    for (std::size_t i = 0; i < c.k.size(); ++i) {
      CHECK(w.a[i] == 0.0);
      CHECK(w.b[i] == c.k[i]);
    }
  }
  SUBCASE("eps (2 pi)^2 = 1/2 doubles B_1") {
    const double eps = 0.5 / alpha2(1);
    const auto w = wkb_coefficients(c, eps);
    CHECK(w.a[0] == doctest::Approx(-c.k[0]).epsilon(1e-14));
    CHECK(w.b[0] == doctest::Approx(2.0 * c.k[0]).epsilon(1e-14));
  }
  SUBCASE("A + B = K") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> log_eps(-8.0, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
      const double eps = std::pow(10.0, log_eps(rng));
      WkbCoefficients w;
      try {
        w = wkb_coefficients(c, eps);
      } catch (const ResonantMode &) {
        continue;
      }
      for (std::size_t i = 0; i < c.k.size(); ++i) {
        const double scale = std::max({std::abs(w.a[i]), std::abs(w.b[i]),
                                       std::abs(c.k[i])});
        CHECK(std::abs(w.a[i] + w.b[i] - c.k[i]) <= 1e-14 * scale);
      }
    }
  }
  SUBCASE("resonance names the mode") {
    try {
      (void)wkb_coefficients(c, 1.0 / alpha2(2));
      FAIL("expected ResonantMode");
    } catch (const ResonantMode &e) {
      CHECK(e.mode() == 2);
      CHECK(std::string(e.what()).find("m=2") != std::string::npos);
    }
  }
}

TEST_CASE("wkb density") {
  const auto &c = gaussian500();
  const SpectralSolution par(Model::parabolic, c, 0.0);
  const SpectralSolution wkb0(Model::wkb, c, 0.0);
  for (double v : {0.0, 1e-4, 0.01, 0.3})
    for (double u : {-0.5, 0.0, 0.17, 0.5})
      CHECK(wkb0.density(u, v) == par.density(u, v));

  const SpectralSolution wkb(Model::wkb, c, 0.13);
  for (double u : {-0.5, 0.0, 0.17, 0.5})
    CHECK(std::abs(wkb.density(u, 0.0) - reconstruct(c, u)) < 1e-12);
}

TEST_CASE("wkb approaches the hyperbolic series linearly in eps") {
  // Gap at (u, v) = (0, 0.05); frozen at eps = 1e-3 from an independent
  // numpy evaluation of both series.
  const auto &c = gaussian500();
  std::vector<double> gaps;
  for (double eps : {1e-3, 1e-4, 1e-5}) {
    gaps.push_back(std::abs(wkb_density(c, eps, 0.0, 0.05) -
                            hyperbolic_density(c, eps, 0.0, 0.05)));
  }
  CHECK(gaps[0] == doctest::Approx(0.02092597).epsilon(1e-5));
  CHECK(gaps[1] / gaps[0] < 0.15);
  CHECK(gaps[2] / gaps[1] < 0.15);
  CHECK(gaps[2] < 1e-3);
}

TEST_CASE("series families share invariants") {
  const auto grid = Grid1D::uniform(4001);
  for (const auto *coeffs : {&gaussian500(), &surface500()}) {
    for (Model model : {Model::parabolic, Model::hyperbolic, Model::wkb}) {
      const SpectralSolution sol(model, *coeffs, 0.13);
      for (double v : {1e-4, 1e-2, 0.3, 1.0}) {
        const auto f = sol.field(grid, v);
        CHECK(std::abs(trapezoid(grid.points(), f.values) - coeffs->k0) < 1e-8);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          CHECK(std::isfinite(f.values[i]));
          CHECK(std::abs(f.values[i] - f.values[grid.size() - 1 - i]) < 1e-12);
        }
      }
      CHECK(std::abs(sol.density(0.5, 1.0) - coeffs->k0) < 0.05 * coeffs->k0);
      CHECK(std::abs(sol.density(0.0, 1.0) - coeffs->k0) < 0.05 * coeffs->k0);
    }
  }
}

TEST_CASE("zero flux at the walls for smooth profiles") {
  const double h = 1e-4;
  for (Model model : {Model::parabolic, Model::hyperbolic, Model::wkb}) {
    const SpectralSolution sol(model, gaussian500(), 0.13);
    for (double v : {1e-3, 0.05, 0.2}) {
      // One-sided fourth-order first derivative at u = 1/2.
      const auto n = [&](int k) { return sol.density(0.5 - k * h, v); };
      const double slope =
          (25.0 * n(0) - 48.0 * n(1) + 36.0 * n(2) - 16.0 * n(3) + 3.0 * n(4)) /
          (12.0 * h);
      CHECK(std::abs(slope) < 1e-3 * gaussian500().k0);
    }
  }
}

TEST_CASE("eps -> 0 collapses hyperbolic onto parabolic") {
  const auto &c = gaussian500();
  const SpectralSolution par(Model::parabolic, c, 0.0);
  std::vector<double> worst;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const SpectralSolution hyp(Model::hyperbolic, c, eps);
    double w = 0.0;
    for (double v : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0})
      for (int i = 0; i <= 10; ++i) {
        const double u = -0.5 + 0.1 * i;
        w = std::max(w, std::abs(hyp.density(u, v) - par.density(u, v)));
      }
    worst.push_back(w);
  }
  CHECK(worst[1] < worst[0]);
  CHECK(worst[2] < worst[1]);
  CHECK(worst[2] <= 1e-4);
}

TEST_CASE("free-space reference") {
  const auto ref = free_space_reference(Gaussian{100.0, 1.0}, 1e-4);
  CHECK(ref.b_effective == doctest::Approx(96.153846153846153846).epsilon(1e-14));
  const auto tiny = free_space_reference(Gaussian{100.0, 2.0}, 1e-15);
  CHECK(tiny.b_effective == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(tiny(0.1) == doctest::Approx(evaluate_profile(Gaussian{100.0, 2.0}, 0.1)));

  const auto &c = gaussian500();
  double worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double u = -0.25 + 0.5 * i / 500.0;
    worst = std::max(worst, std::abs(parabolic_density(c, u, 1e-4) - ref(u)));
  }
  CHECK(worst < 1e-6);

  CHECK_THROWS_AS(free_space_reference(Gaussian{100.0, 1.0}, 0.01),
                  ReferenceInvalid);
  CHECK_THROWS_AS(free_space_reference(Gaussian{10.0, 1.0}, 1e-4),
                  ReferenceInvalid);
  CHECK_THROWS_AS(free_space_reference(Gaussian{100.0, 1.0}, 0.0),
                  ReferenceInvalid);
}

TEST_CASE("model names round trip") {
  for (Model m : {Model::parabolic, Model::hyperbolic, Model::wkb, Model::fd})
    CHECK(parse_model(to_string(m)) == m);
  CHECK_THROWS_AS(parse_model("fick"), InvalidParameter);
}
