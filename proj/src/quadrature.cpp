#include "slabdiff/quadrature.hpp"

#include "slabdiff/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace slabdiff::quadrature {
namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights; the
// odd-indexed abscissae are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel &o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)> &f, double a,
                    double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXk[j];
    const double fsum = f(centre - dx) + f(centre + dx);
    kronrod += kWk[j] * fsum;
    if (j % 2 == 1)
      gauss += kWg[j / 2] * fsum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace

Result integrate(const std::function<double(double)> &f, double a, double b,
                 const Options &options, std::span<const double> breakpoints) {
  Result out;
  if (a == b)
    return out;
  if (!(a < b))
    throw InvalidParameter("integrate: require a < b");

  std::vector<double> cuts;
  const std::size_t n0 = std::max<std::size_t>(1, options.initial_panels);
  cuts.reserve(n0 + 1 + breakpoints.size());
  for (std::size_t i = 0; i <= n0; ++i)
    cuts.push_back(a + (b - a) * (static_cast<double>(i) / static_cast<double>(n0)));
  cuts.back() = b;
  for (double p : breakpoints)
    if (p > a && p < b)
      cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> work;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gauss_kronrod(f, cuts[i], cuts[i + 1]);
    out.evaluations += 15;
    total_error += p.error;
    work.push(p);
  }

  while (total_error > options.abs_tol) {
    if (out.evaluations + 30 > options.max_evaluations) {
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << a << ", " << b
          << "]: error estimate " << total_error << " > tolerance "
          << options.abs_tol << " after " << out.evaluations
          << " evaluations (" << work.size() << " panels)";
      throw NumericalError(msg.str());
    }
    const Panel worst = work.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      throw NumericalError("quadrature: panel width underflow near u=" +
                           std::to_string(mid));
    }
    work.pop();
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    out.evaluations += 30;
    total_error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
  }

  // Sum panels left to right so the result does not depend on heap order.
  std::vector<Panel> panels;
  panels.reserve(work.size());
  while (!work.empty()) {
    panels.push_back(work.top());
    work.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel &l, const Panel &r) { return l.a < r.a; });
  double err = 0.0;
  for (const Panel &p : panels) {
    out.value += p.value;
    err += p.error;
  }
  out.error_estimate = err;
  out.panels = panels.size();
  return out;
}

} // namespace slabdiff::quadrature
