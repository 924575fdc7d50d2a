#include "wavesym/sphere_symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavesym/error.hpp"

namespace wavesym {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

void check_mn(int m, int n) {
  if (m < 0 || m > 2 || n < 0 || n > 6) {
    throw Error(ErrorKind::OutOfRange, "need 0 <= m <= 2 and 0 <= n <= 6, got m=" +
                                           std::to_string(m) + " n=" + std::to_string(n));
  }
}

Vec3 stereographic(const SpherePoint& point) {
  const double x = point.coord.real();
  const double y = point.coord.imag();
  const double s = point.chart == 1 ? 1.0 : -1.0;
  const double r2 = x * x + y * y;
  return Vec3(2.0 * x, s * 2.0 * y, s * (r2 - 1.0)) / (1.0 + r2);
}

SpherePoint inverse_stereographic(const Vec3& x, int chart) {
  if (chart == 1) {
    const double denom = 1.0 - x.z();
    if (denom <= 0.0) throw Error(ErrorKind::OutOfDomain, "north pole is not in chart 1");
    return {1, Complex(x.x(), x.y()) / denom};
  }
  const double denom = 1.0 + x.z();
  if (denom <= 0.0) throw Error(ErrorKind::OutOfDomain, "south pole is not in chart 2");
  return {2, Complex(x.x(), -x.y()) / denom};
}

SpherePoint chart_transition(const SpherePoint& point) {
  if (point.coord == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::OutOfDomain, "chart origin has no image in the other chart");
  }
  return {point.chart == 1 ? 2 : 1, 1.0 / point.coord};
}

double frame_scale(double r) { return 2.0 / (1.0 + r * r); }

double frame_transition_angle(const SpherePoint& point) {
  if (point.coord == Complex(0.0, 0.0)) {
    throw Error(ErrorKind::OutOfDomain, "frames only overlap away from the chart origin");
  }
  return kPi - 2.0 * std::arg(point.coord);
}

PolyVF PolyVF::from_coefficients(std::span<const Complex> coeffs) {
  for (std::size_t k = 3; k < coeffs.size(); ++k) {
    if (coeffs[k] != Complex(0.0, 0.0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "only polynomials of degree <= 2 extend holomorphically to the sphere");
    }
  }
  PolyVF p;
  if (coeffs.size() > 0) p.a0 = coeffs[0];
  if (coeffs.size() > 1) p.a1 = coeffs[1];
  if (coeffs.size() > 2) p.a2 = coeffs[2];
  return p;
}

PolyVF PolyVF::monomial(int degree) {
  if (degree < 0 || degree > 2) {
    throw Error(ErrorKind::InvalidArgument, "monomial degree must be 0, 1 or 2");
  }
  PolyVF p;
  (degree == 0 ? p.a0 : degree == 1 ? p.a1 : p.a2) = 1.0;
  return p;
}

PolyVF vf_transition(const PolyVF& p) { return {-p.a2, -p.a1, -p.a0}; }

Complex SphereSymbol::s(Complex z) const {
  return factors[0](z) * factors[1](z) * factors[2](z);
}

SphereSymbol SphereSymbol::monomial(int m, int n) {
  check_mn(m, n);
  const int n1 = std::min(n, 2);
  const int n2 = std::min(n - n1, 2);
  const int n3 = n - n1 - n2;
  return {PolyVF::monomial(m),
          {PolyVF::monomial(n1), PolyVF::monomial(n2), PolyVF::monomial(n3)}};
}

ComplexRep symbol_rep(const SphereSymbol& sym, const SpherePoint& point) {
  const Complex z = point.coord;
  const double lam = frame_scale(std::abs(z));
  const double lam3 = lam * lam * lam;
  if (point.chart == 1) return {lam * sym.v(z), lam3 * sym.s(z)};
  const Complex triple = vf_transition(sym.factors[0])(z) * vf_transition(sym.factors[1])(z) *
                         vf_transition(sym.factors[2])(z);
  return {lam * vf_transition(sym.v)(z), lam3 * triple};
}

LinearSymbol2 evaluate_symbol(const SphereSymbol& sym, const SpherePoint& point) {
  return rep_to_matrix(symbol_rep(sym, point));
}

ChartSymbolField symbol_field(const SphereSymbol& sym, const Rect& domain, int resolution,
                              int chart) {
  ChartSymbolField field;
  field.domain = domain;
  field.resolution = resolution;
  field.sampler = [sym, chart](Point2 x) {
    return evaluate_symbol(sym, {chart, Complex(x.x1, x.x2)});
  };
  return field;
}

double alpha_root(double tol) {
  auto g = [](double r) { return ((r + 1.0) * r + 3.0) * r - 1.0; };
  double lo = 0.0;  // g(0) = -1
  double hi = 1.0;  // g(1) = 4
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

ZSet z_set(int m, int n, double tol_root) {
  check_mn(m, n);
  ZSet z;
  z.m = m;
  z.n = n;
  z.includes_infinity = m < 2 && n < 6;
  if (m > 0 && n > 0) {
    // r^m - lambda^2 r^n factors out the lower power of r.
    const ZSet shifted = n <= m ? z_set(m - n, 0, tol_root) : z_set(0, n - m, tol_root);
    z.radii = shifted.radii;
    z.includes_zero = true;
    return z;
  }
  if (m == 0 && n == 1) {
    z.radii = {alpha_root(tol_root), 1.0};
  } else if (m == 0 && n == 3) {
    z.radii = {1.0, 1.0 / alpha_root(tol_root)};
  } else {
    z.radii = {1.0};
  }
  return z;
}

double h_function(int m, int n, double r) {
  const double lam = frame_scale(r);
  const double a = lam * std::pow(r, m);
  const double b = lam * lam * lam * std::pow(r, n);
  return a * a - b * b;
}

Transversality transversality_h(int m, int n) {
  check_mn(m, n);
  constexpr double step = 1e-6;
  Transversality t;
  t.dh_dr_analytic = 2.0 * (2 + m - n);
  t.dh_dr_numeric = (h_function(m, n, 1.0 + step) - h_function(m, n, 1.0 - step)) / (2.0 * step);
  t.transversal = n - m != 2;
  return t;
}

double predicted_kernel_angle_lifted(int m, int n, double theta) {
  return 0.5 * (n - m) * theta + 0.5 * kPi;
}

double predicted_kernel_angle(int m, int n, double theta) {
  return normalize_line_angle(predicted_kernel_angle_lifted(m, n, theta));
}

namespace {

SingularCurve sampled_circle(double r, int samples) {
  SingularCurve c;
  c.closed = true;
  for (int k = 0; k <= samples; ++k) {
    const double th = 2.0 * kPi * (k % samples) / samples;
    c.polyline.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return c;
}

double mean_radius(const SingularCurve& c) {
  double sum = 0.0;
  const std::size_t count = c.polyline.size() - 1;
  for (std::size_t i = 0; i < count; ++i) sum += std::hypot(c.polyline[i].x1, c.polyline[i].x2);
  return sum / static_cast<double>(count);
}

}  // namespace

MnReport analyze_mn(int m, int n, const AnalyzeOptions& options) {
  MnReport report;
  report.m = m;
  report.n = n;
  report.zset = z_set(m, n, options.tol_root);
  report.transversality = transversality_h(m, n);

  const double r_max = *std::max_element(report.zset.radii.begin(), report.zset.radii.end());
  const double half = std::max(2.0, 1.25 * r_max);
  const ChartSymbolField field =
      symbol_field(SphereSymbol::monomial(m, n), {-half, half, -half, half}, options.grid);

  if (!report.transversality.transversal) {
    // Tangential zero of det M: no sign change to contour, so the circles
    // come from the radius set and are certified non-regular.
    for (double r : report.zset.radii) {
      CircleReport circle;
      circle.r = r;
      SingularCurve curve = sampled_circle(r, 720);
      circle.component.regularity = regular_value_check(field, curve);
      circle.component.base = std::move(curve);
      circle.min_grad = circle.component.regularity.min_grad;
      circle.transversal = circle.component.regularity.regular;
      report.circles.push_back(std::move(circle));
    }
    return report;
  }

  ContourOptions contour;
  contour.tol_contour = options.tol_contour;
  for (SingularCurve& curve : extract_singular_set(field, contour)) {
    if (!curve.closed) continue;
    CircleReport circle;
    const double measured = mean_radius(curve);
    auto nearest = std::min_element(report.zset.radii.begin(), report.zset.radii.end(),
                                    [&](double a, double b) {
                                      return std::abs(a - measured) < std::abs(b - measured);
                                    });
    circle.r = *nearest;
    circle.component = make_component(field, std::move(curve));
    circle.transversal = circle.component.regularity.regular;
    circle.min_grad = circle.component.regularity.min_grad;
    circle.winding = circle.component.winding;
    circle.knot = circle.component.knot;
    report.circles.push_back(std::move(circle));
  }
  std::stable_sort(report.circles.begin(), report.circles.end(),
                   [](const CircleReport& a, const CircleReport& b) { return a.r < b.r; });
  return report;
}

}  // namespace wavesym
