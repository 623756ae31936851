#include "slabdiff/spectral.hpp"

#include "slabdiff/detail/series.hpp"
#include "slabdiff/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace slabdiff {

std::string_view to_string(Model m) noexcept {
  switch (m) {
  case Model::parabolic:
    return "parabolic";
  case Model::hyperbolic:
    return "hyperbolic";
  case Model::wkb:
    return "wkb";
  case Model::fd:
    return "fd";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::parabolic, Model::hyperbolic, Model::wkb, Model::fd})
    if (to_string(m) == name)
      return m;
  throw InvalidParameter("unknown model '" + std::string(name) + "'");
}

std::string_view to_string(DampingClass d) noexcept {
  switch (d) {
  case DampingClass::overdamped:
    return "overdamped";
  case DampingClass::critical:
    return "critical";
  case DampingClass::underdamped:
    return "underdamped";
  }
  return "unknown";
}

ModeEvolution classify_mode(int m, double km, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw InvalidParameter("hyperbolic modes need eps > 0");
  if (m < 1)
    throw InvalidParameter("mode index must be >= 1");
  ModeEvolution me;
  me.m = m;
  me.km = km;
  const double alpha2 = detail::mode_wavenumber_sq(m);
  const double disc = 1.0 - 4.0 * alpha2 * eps;
  if (disc > kCriticalTolerance) {
    const double root = std::sqrt(disc);
    me.damping = DampingClass::overdamped;
    // -(1 - root) / (2 eps) without the cancellation for small eps.
    me.mu1 = -2.0 * alpha2 / (1.0 + root);
    me.mu2 = -(1.0 + root) / (2.0 * eps);
    const double gap = me.mu2 - me.mu1;
    me.c1 = me.mu2 / gap * km;
    me.c2 = -me.mu1 / gap * km;
  } else if (disc < -kCriticalTolerance) {
    me.damping = DampingClass::underdamped;
    me.sigma = -1.0 / (2.0 * eps);
    me.omega = std::sqrt(-disc) / (2.0 * eps);
  } else {
    me.damping = DampingClass::critical;
    me.sigma = -1.0 / (2.0 * eps);
  }
  return me;
}

std::vector<ModeEvolution> build_mode_evolutions(double eps,
                                                 const SpectralCoefficients &c) {
  std::vector<ModeEvolution> out;
  out.reserve(c.k.size());
  for (int m = 1; m <= c.truncation(); ++m)
    out.push_back(classify_mode(m, c.k[static_cast<std::size_t>(m - 1)], eps));
  return out;
}

double hyperbolic_mode_factor(const ModeEvolution &me, double eps, double v) {
  switch (me.damping) {
  case DampingClass::overdamped: {
    // [mu2 e^{mu1 v} - mu1 e^{mu2 v}] / (mu2 - mu1), factored through expm1
    // so it stays accurate as the two exponents merge.
    const double gap = me.mu2 - me.mu1;
    return std::exp(me.mu1 * v) * (1.0 - me.mu1 * std::expm1(gap * v) / gap);
  }
  case DampingClass::underdamped: {
    const double wv = me.omega * v;
    return std::exp(me.sigma * v) *
           (std::cos(wv) + std::sin(wv) / (2.0 * eps * me.omega));
  }
  case DampingClass::critical:
    return std::exp(me.sigma * v) * (1.0 + v / (2.0 * eps));
  }
  return 0.0;
}

WkbCoefficients wkb_coefficients(const SpectralCoefficients &c, double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw InvalidParameter("WKB needs eps >= 0");
  WkbCoefficients out;
  out.a.resize(c.k.size());
  out.b.resize(c.k.size());
  for (int m = 1; m <= c.truncation(); ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const double x = eps * detail::mode_wavenumber_sq(m);
    const double denom = 1.0 - x;
    if (std::abs(denom) < 1e-9) {
      std::ostringstream msg;
      msg << "WKB coefficients are singular for mode m=" << m
          << " (eps (2 m pi)^2 = " << x << ")";
      throw ResonantMode(msg.str(), m);
    }
    out.a[i] = -x / denom * c.k[i];
    out.b[i] = c.k[i] / denom;
  }
  return out;
}

SpectralSolution::SpectralSolution(Model model, SpectralCoefficients coefficients,
                                   double eps)
    : model_(model), coeffs_(std::move(coefficients)), eps_(eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw InvalidParameter("eps must be finite and >= 0");
  switch (model_) {
  case Model::parabolic:
    break;
  case Model::hyperbolic:
    if (!(eps > 0.0))
      throw InvalidParameter("the hyperbolic model needs eps > 0");
    modes_ = build_mode_evolutions(eps_, coeffs_);
    break;
  case Model::wkb:
    wkb_ = wkb_coefficients(coeffs_, eps_);
    break;
  case Model::fd:
    throw InvalidParameter("fd is not a series solution");
  }
}

double SpectralSolution::density(double u, double v) const {
  require_in_slab(u);
  require_time(v);
  return evaluate(u, v);
}

double SpectralSolution::evaluate(double u, double v) const {
  const auto &k = coeffs_.k;
  const int M = coeffs_.truncation();
  switch (model_) {
  case Model::parabolic:
    return detail::sum_modes(coeffs_.k0, M, [&](int m) {
      const auto i = static_cast<std::size_t>(m - 1);
      return k[i] * std::exp(-detail::mode_wavenumber_sq(m) * v) *
             detail::cos_mode(m, u);
    });
  case Model::hyperbolic:
    return detail::sum_modes(coeffs_.k0, M, [&](int m) {
      const auto i = static_cast<std::size_t>(m - 1);
      return k[i] * hyperbolic_mode_factor(modes_[i], eps_, v) *
             detail::cos_mode(m, u);
    });
  case Model::wkb: {
    if (eps_ == 0.0) {
      return detail::sum_modes(coeffs_.k0, M, [&](int m) {
        const auto i = static_cast<std::size_t>(m - 1);
        return wkb_.b[i] * std::exp(-detail::mode_wavenumber_sq(m) * v) *
               detail::cos_mode(m, u);
      });
    }
    const double fast = std::exp(-v / eps_);
    return detail::sum_modes(coeffs_.k0, M, [&](int m) {
      const auto i = static_cast<std::size_t>(m - 1);
      return (wkb_.a[i] * fast +
              wkb_.b[i] * std::exp(-detail::mode_wavenumber_sq(m) * v)) *
             detail::cos_mode(m, u);
    });
  }
  case Model::fd:
    break;
  }
  return 0.0;
}

FieldSlice SpectralSolution::field(const Grid1D &grid, double v) const {
  require_time(v);
  FieldSlice out{grid, v, {}, model_};
  out.values.reserve(grid.size());
  for (double u : grid.points())
    out.values.push_back(evaluate(u, v));
  return out;
}

TimeTrace SpectralSolution::trace(double u, const TimeGrid &times) const {
  require_in_slab(u);
  TimeTrace out{u, times, {}, model_};
  out.values.reserve(times.size());
  for (double v : times.points())
    out.values.push_back(evaluate(u, v));
  return out;
}

double parabolic_density(const SpectralCoefficients &c, double u, double v) {
  return SpectralSolution(Model::parabolic, c, 0.0).density(u, v);
}

double hyperbolic_density(const SpectralCoefficients &c, double eps, double u,
                          double v) {
  return SpectralSolution(Model::hyperbolic, c, eps).density(u, v);
}

double wkb_density(const SpectralCoefficients &c, double eps, double u,
                   double v) {
  return SpectralSolution(Model::wkb, c, eps).density(u, v);
}

double FreeSpaceReference::operator()(double u) const {
  return B * std::sqrt(b_effective / std::numbers::pi) *
         std::exp(-b_effective * u * u);
}

FreeSpaceReference free_space_reference(const Gaussian &profile, double v) {
  validate(profile);
  if (!(v > 0.0) || !std::isfinite(v))
    throw ReferenceInvalid("free-space reference needs v > 0");
  const double support = 1.0 / std::sqrt(profile.b) + std::sqrt(4.0 * v);
  if (support > kFreeSpaceSupportLimit) {
    std::ostringstream msg;
    msg << "free-space reference invalid: support 1/sqrt(b) + sqrt(4v) = "
        << support << " exceeds " << kFreeSpaceSupportLimit
        << " (walls are no longer negligible)";
    throw ReferenceInvalid(msg.str());
  }
  // Variances add: 1/(2b') = 1/(2b) + 2v.
  return {1.0 / (1.0 / profile.b + 4.0 * v), profile.B};
}

} // namespace slabdiff
