#include "slabdiff/profiles.hpp"

#include "slabdiff/detail/series.hpp"
#include "slabdiff/error.hpp"
#include "slabdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace slabdiff {
namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};

double interpolate(std::span<const double> x, std::span<const double> y,
                   double u) {
  if (u <= x.front())
    return y.front();
  if (u >= x.back())
    return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), u);
  const auto hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double t = (u - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

} // namespace

Tabulated::Tabulated(const Grid1D &grid, std::vector<double> values)
    : grid_(Grid1D::uniform(2)) {
  const auto pts = grid.points();
  if (pts.size() < 2 || values.size() != pts.size())
    throw InvalidParameter(
        "tabulated profile needs >= 2 nodes and one value per node");
  if (std::abs(pts.front() + 0.5) > 1e-12 || std::abs(pts.back() - 0.5) > 1e-12)
    throw InvalidParameter("tabulated profile grid must span [-1/2, 1/2]");
  for (double y : values)
    if (!std::isfinite(y) || y < 0.0)
      throw InvalidParameter("tabulated profile values must be finite and >= 0");

  std::vector<double> half;
  half.reserve(pts.size() + 1);
  for (double p : pts)
    half.push_back(std::abs(p));
  half.push_back(0.0);
  half.push_back(0.5);
  std::sort(half.begin(), half.end());
  std::vector<double> nodes;
  for (double p : half)
    if (nodes.empty() || p - nodes.back() > 1e-14)
      nodes.push_back(p);
  nodes.back() = 0.5;

  std::vector<double> sym(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double right = interpolate(pts, values, nodes[i]);
    const double left = interpolate(pts, values, -nodes[i]);
    asymmetry_ = std::max(asymmetry_, 0.5 * std::abs(right - left));
    sym[i] = 0.5 * (right + left);
  }

  std::vector<double> full_x;
  std::vector<double> full_y;
  full_x.reserve(2 * nodes.size() - 1);
  full_y.reserve(2 * nodes.size() - 1);
  for (std::size_t i = nodes.size(); i-- > 1;) {
    full_x.push_back(-nodes[i]);
    full_y.push_back(sym[i]);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    full_x.push_back(nodes[i]);
    full_y.push_back(sym[i]);
  }
  grid_ = Grid1D::from_points(std::move(full_x));
  values_ = std::move(full_y);
  if (asymmetry_ > 0.0)
    std::clog << "slabdiff: tabulated profile symmetrized, max asymmetry "
                 "removed "
              << asymmetry_ << '\n';
}

double Tabulated::operator()(double u) const {
  return interpolate(grid_.points(), values_, u);
}

void validate(const InitialProfile &p) {
  std::visit(
      overloaded{
          [](const Gaussian &g) {
            if (!(g.b > 0.0) || !(g.B > 0.0) || !std::isfinite(g.b) ||
                !std::isfinite(g.B))
              throw InvalidParameter("gaussian profile needs b > 0 and B > 0");
            if (g.b > kMaxGaussianWidthParam)
              throw InvalidParameter(
                  "gaussian width parameter b=" + fmt_double(g.b) +
                  " exceeds 1e6 (delta limit); a truncated cosine series "
                  "cannot represent it, use a tabulated profile instead");
          },
          [](const SurfaceCosh &c) {
            if (!(c.s > 0.0) || !(c.A > 0.0) || !std::isfinite(c.s) ||
                !std::isfinite(c.A))
              throw InvalidParameter(
                  "surface_cosh profile needs s > 0 and A > 0");
            if (c.s > kMaxSurfaceSharpness)
              throw InvalidParameter(
                  "surface_cosh sharpness s=" + fmt_double(c.s) +
                  " exceeds 1e4 (delta limit); a truncated cosine series "
                  "cannot represent it, use a tabulated profile instead");
          },
          [](const Uniform &u) {
            if (!(u.level >= 0.0) || !std::isfinite(u.level))
              throw InvalidParameter("uniform profile needs level >= 0");
          },
          [](const CosineMode &c) {
            if (c.m < 1)
              throw InvalidParameter("cosine_mode needs m >= 1");
            if (!std::isfinite(c.offset) || !std::isfinite(c.amplitude) ||
                c.offset < std::abs(c.amplitude))
              throw InvalidParameter(
                  "cosine_mode needs offset >= |amplitude| (non-negative "
                  "density)");
          },
          [](const Tabulated &) {}},
      p);
}

std::string profile_tag(const InitialProfile &p) {
  return std::visit(
      overloaded{
          [](const Gaussian &g) {
            return "gaussian(b=" + fmt_double(g.b) + ",B=" + fmt_double(g.B) +
                   ")";
          },
          [](const SurfaceCosh &c) {
            return "surface_cosh(s=" + fmt_double(c.s) +
                   ",A=" + fmt_double(c.A) + ")";
          },
          [](const Uniform &u) {
            return "uniform(level=" + fmt_double(u.level) + ")";
          },
          [](const CosineMode &c) {
            return "cosine_mode(m=" + std::to_string(c.m) +
                   ",offset=" + fmt_double(c.offset) +
                   ",amplitude=" + fmt_double(c.amplitude) + ")";
          },
          [](const Tabulated &t) {
            return "tabulated(nodes=" + std::to_string(t.grid().size()) + ")";
          }},
      p);
}

double evaluate_profile(const InitialProfile &p, double u) {
  require_in_slab(u);
  return std::visit(
      overloaded{
          [u](const Gaussian &g) {
            return g.B * std::sqrt(g.b / std::numbers::pi) *
                   std::exp(-g.b * u * u);
          },
          [u](const SurfaceCosh &c) {
            // cosh(s u) / sinh(s/2) rewritten so that large s cannot overflow.
            const double au = std::abs(u);
            const double num =
                std::exp(c.s * (au - 0.5)) + std::exp(-c.s * (au + 0.5));
            return 0.5 * c.A * c.s * num / -std::expm1(-c.s);
          },
          [](const Uniform &v) { return v.level; },
          [u](const CosineMode &c) {
            return c.offset + c.amplitude * detail::cos_mode(c.m, u);
          },
          [u](const Tabulated &t) { return t(u); }},
      p);
}

SpectralCoefficients compute_coefficients(const InitialProfile &p, int M,
                                          const CoefficientOptions &opt) {
  if (M < 1)
    throw InvalidParameter("truncation M must be >= 1");
  validate(p);

  // n0 is even, so integrate over [0, 1/2] and double.
  std::vector<double> kinks;
  if (const auto *t = std::get_if<Tabulated>(&p)) {
    for (double x : t->grid().points())
      if (x > 0.0 && x < 0.5)
        kinks.push_back(x);
  }
  const auto n0 = [&p](double u) { return evaluate_profile(p, u); };

  SpectralCoefficients out;
  out.profile_tag = profile_tag(p);
  out.k.resize(static_cast<std::size_t>(M));

  quadrature::Options qo;
  qo.max_evaluations = opt.max_evaluations;
  qo.abs_tol = 0.5 * opt.abs_tol;
  out.k0 = 2.0 * quadrature::integrate(n0, 0.0, 0.5, qo, kinks).value;

  qo.abs_tol = 0.25 * opt.abs_tol;
  for (int m = 1; m <= M; ++m) {
    // One panel per period of cos(2 m pi u): 15 nodes per oscillation.
    qo.initial_panels = static_cast<std::size_t>((m + 1) / 2);
    const auto integrand = [&n0, m](double u) {
      return n0(u) * detail::cos_mode(m, u);
    };
    try {
      out.k[static_cast<std::size_t>(m - 1)] =
          4.0 * quadrature::integrate(integrand, 0.0, 0.5, qo, kinks).value;
    } catch (const NumericalError &e) {
      throw NumericalError("coefficient K_" + std::to_string(m) + " of " +
                           out.profile_tag + ": " + e.what());
    }
  }
  return out;
}

SpectralCoefficients make_coefficients(double k0, std::vector<double> k,
                                       std::string tag) {
  if (k.empty())
    throw InvalidParameter("need at least one mode coefficient");
  for (double x : k)
    if (!std::isfinite(x))
      throw InvalidParameter("mode coefficients must be finite");
  if (!std::isfinite(k0))
    throw InvalidParameter("K0 must be finite");
  SpectralCoefficients c;
  c.k0 = k0;
  c.k = std::move(k);
  c.profile_tag = std::move(tag);
  return c;
}

double surface_cosh_coefficient(const SurfaceCosh &p, int m) {
  const double s2 = p.s * p.s;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * p.A * s2 * sign / (detail::mode_wavenumber_sq(m) + s2);
}

double reconstruct(const SpectralCoefficients &c, double u) {
  require_in_slab(u);
  return detail::sum_modes(c.k0, c.truncation(), [&](int m) {
    return c.k[static_cast<std::size_t>(m - 1)] * detail::cos_mode(m, u);
  });
}

} // namespace slabdiff
