#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "wavesym/mesh.hpp"
#include "wavesym/multiplicity.hpp"
#include "wavesym/sym2.hpp"

namespace wavesym {

/// A point on the Riemann sphere in one of the two stereographic charts:
/// chart 1 (coordinate z) misses the north pole, chart 2 (w = 1/z) the south.
struct SpherePoint {
  int chart = 1;
  Complex coord{};
};

/// phi_i(x, y) = (2x, s 2y, s (x^2 + y^2 - 1)) / (1 + x^2 + y^2), s = (-1)^{i+1}.
Vec3 stereographic(const SpherePoint& point);

/// Inverse of stereographic() for the requested chart. Throws OutOfDomain at
/// the pole the chart misses.
SpherePoint inverse_stereographic(const Vec3& x, int chart);

/// Same point in the other chart (coord -> 1/coord). Throws OutOfDomain at 0.
SpherePoint chart_transition(const SpherePoint& point);

/// lambda(r) = 2/(1 + r^2): scales coordinate fields to orthonormal frames.
double frame_scale(double r);

/// Angle psi with e1 = e^{i psi} f1 between the chart-1 and chart-2
/// orthonormal frames at a point of the overlap; the complex rep transforms
/// as rep_2 = rotate_rep(rep_1, psi).
double frame_transition_angle(const SpherePoint& point);

/// Holomorphic field P(z) d/dx with P(z) = a0 + a1 z + a2 z^2.
struct PolyVF {
  Complex a0{};
  Complex a1{};
  Complex a2{};

  Complex operator()(Complex z) const { return a0 + z * (a1 + z * a2); }

  /// Rejects coefficient lists with nonzero terms beyond z^2.
  static PolyVF from_coefficients(std::span<const Complex> coeffs);
  static PolyVF monomial(int degree);
};

/// The same field in the w chart: -w^2 P(1/w) = -(a2 + a1 w + a0 w^2).
PolyVF vf_transition(const PolyVF& p);

/// Symbol attached to V + V1 (x) V2 (x) V3 for holomorphic fields.
struct SphereSymbol {
  PolyVF v;
  std::array<PolyVF, 3> factors;

  /// s(z) = v1(z) v2(z) v3(z).
  Complex s(Complex z) const;

  /// The monomial family: v = z^m, s = z^n (0 <= m <= 2, 0 <= n <= 6).
  static SphereSymbol monomial(int m, int n);
};

/// Complex rep (lambda v, lambda^3 s) in the orthonormal frame of the chart;
/// in chart 2 the transformed fields vf_transition(.) are used.
ComplexRep symbol_rep(const SphereSymbol& sym, const SpherePoint& point);

/// Coefficient matrix of the symbol in the orthonormal frame at the point.
LinearSymbol2 evaluate_symbol(const SphereSymbol& sym, const SpherePoint& point);

/// Chart field x -> evaluate_symbol(sym, x1 + i x2) over `domain`.
ChartSymbolField symbol_field(const SphereSymbol& sym, const Rect& domain, int resolution,
                              int chart = 1);

struct ZSet {
  int m = 0;
  int n = 0;
  std::vector<double> radii;  // positive elements, ascending
  bool includes_zero = false;
  bool includes_infinity = false;
};

/// Only real root of r^3 + r^2 + 3r - 1, by bisection until the bracket is no
/// wider than tol (or cannot shrink).
double alpha_root(double tol = 1e-15);

/// Radii r with r^m = lambda(r)^2 r^n; flags report whether the singular set
/// of sigma_{m,n} contains z = 0 and the point at infinity.
ZSet z_set(int m, int n, double tol_root = 1e-15);

/// h(r) = (lambda(r) r^m)^2 - (lambda(r)^3 r^n)^2 (twice det M on |z| = r).
double h_function(int m, int n, double r);

struct Transversality {
  double dh_dr_analytic = 0.0;  // 2(2 + m - n)
  double dh_dr_numeric = 0.0;   // central difference, step 1e-6
  bool transversal = false;     // n - m != 2
};

Transversality transversality_h(int m, int n);

/// Predicted kernel-line angle (n - m) theta / 2 + pi/2 on the unit circle,
/// unreduced and reduced mod pi.
double predicted_kernel_angle_lifted(int m, int n, double theta);
double predicted_kernel_angle(int m, int n, double theta);

struct CircleReport {
  double r = 0.0;
  bool transversal = false;
  std::optional<int> winding;
  std::optional<KnotDescriptor> knot;
  double min_grad = 0.0;
  MultiplicityComponent component;
};

struct MnReport {
  int m = 0;
  int n = 0;
  ZSet zset;
  Transversality transversality;
  std::vector<CircleReport> circles;  // ascending radius
};

struct AnalyzeOptions {
  int grid = 512;
  double tol_contour = 1e-10;
  double tol_root = 1e-15;
};

/// Singular radii, transversality and contour-measured winding per circle for
/// sigma_{m,n}. When n - m = 2 the circles are reported without winding.
MnReport analyze_mn(int m, int n, const AnalyzeOptions& options = {});

/// Throws OutOfRange unless 0 <= m <= 2 and 0 <= n <= 6.
void check_mn(int m, int n);

}  // namespace wavesym
