#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "wavesym/mesh.hpp"
#include "wavesym/sym2.hpp"

namespace wavesym {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Rect {
  double x1_min = -1.0;
  double x1_max = 1.0;
  double x2_min = -1.0;
  double x2_max = 1.0;

  bool contains(Point2 x) const {
    return x.x1 >= x1_min && x.x1 <= x1_max && x.x2 >= x2_min && x.x2 <= x2_max;
  }
  double diameter() const;
};

/// A traceless symbol over a planar chart: x -> M(x), with (p,q) = M(x) xi.
/// The sampler must be deterministic.
struct ChartSymbolField {
  Rect domain;
  std::function<LinearSymbol2(Point2)> sampler;
  int resolution = 256;  // cells per axis

  /// Throws OutOfDomain outside the rectangle.
  LinearSymbol2 sample(Point2 x) const;
};

/// f(x) = det M(x) = a1 b2 - a2 b1; zero exactly on the singular set.
double det_field(const ChartSymbolField& field, Point2 x);

struct ContourOptions {
  /// Vertex residual bound relative to the grid maximum of |f|.
  double tol_contour = 1e-10;
};

struct SingularCurve {
  std::vector<Point2> polyline;  // closed curves repeat the first vertex
  bool closed = false;
  std::vector<double> residuals;  // |f| per vertex

  double length() const;
};

/// Zero contours of det M by marching squares with bisection refinement on
/// grid edges. Closed curves run counter-clockwise. Sorted by descending
/// length, then by first vertex. Throws DegenerateField if f vanishes on the
/// whole grid.
std::vector<SingularCurve> extract_singular_set(const ChartSymbolField& field,
                                                const ContourOptions& options = {});

struct RegularValueReport {
  bool regular = false;
  double min_grad = 0.0;  // smallest |grad f| over the curve vertices
  double threshold = 0.0;
};

/// Numerical certificate that 0 is a regular value of f along the curve
/// (equivalently, transversality of the symbol to the zero section).
RegularValueReport regular_value_check(const ChartSymbolField& field,
                                       const SingularCurve& curve);

/// Line angle in [0, pi) of the unit covector spanning ker M(x). Throws
/// RankZero when M(x) has a two-dimensional kernel.
double kernel_angle(const LinearSymbol2& m);
double kernel_angle(const ChartSymbolField& field, Point2 x);

/// (2, m) torus-knot descriptor of a multiplicity curve.
struct KnotDescriptor {
  int p = 2;
  int q = 0;
  bool connected = false;
  int components = 2;
};

KnotDescriptor knot_type(int winding);

struct MultiplicityComponent {
  SingularCurve base;
  /// Lifted kernel-line angle per polyline vertex (closing vertex included).
  std::vector<double> kernel_angles;
  std::optional<int> winding;
  std::optional<KnotDescriptor> knot;
  RegularValueReport regularity;

  bool connected() const { return knot && knot->connected; }
};

/// Continuous lift of line angles (mod pi). Throws LiftFailure when two
/// consecutive lines differ by more than pi/4.
std::vector<double> lift_line_angles(std::span<const double> angles);

/// Half-turns of the kernel line over one counter-clockwise traversal.
/// Requires a closed, regular base curve.
int winding_number(const MultiplicityComponent& component);

/// Builds the component over a closed singular curve: regularity
/// certificate, lifted kernel angles, and (when regular) winding and knot.
MultiplicityComponent make_component(const ChartSymbolField& field, SingularCurve curve);

struct TorusPoint {
  double base_angle = 0.0;   // position along the base curve, [0, 2 pi)
  double fiber_angle = 0.0;  // covector angle in the fiber circle (lifted)
};

/// Multiplicity set over one component in solid-torus coordinates: one
/// closed polyline for odd winding, two for even.
std::vector<std::vector<TorusPoint>> knot_polylines(const MultiplicityComponent& component);

/// Standard (2, m) torus-knot curve with the same conventions, sampled at
/// `samples` points per base loop.
std::vector<std::vector<TorusPoint>> knot_polylines(int winding, int samples);

/// Embedding of solid-torus coordinates in R^3.
Vec3 torus_embedding(const TorusPoint& pt, double major_radius = 2.0,
                     double minor_radius = 1.0);

/// Rows `curve_id,x1,x2,kernel_angle_lifted`, with a header line.
void write_polyline_csv(std::ostream& os, std::span<const MultiplicityComponent> components);

/// Traceless section sampled in a given orthonormal tangent frame.
using TangentSection =
    std::function<Sym2Value(const Vec3& x, const Vec3& t1, const Vec3& t2)>;

/// Sum over faces of the degree of (p,q) around each face, computed in a
/// frame fixed per face and projected to each vertex tangent plane (normals
/// given per vertex). Faces are expected counter-clockwise about the normal.
/// Throws ZeroOnVertex if the section vanishes at a vertex.
int signed_zero_count(const SurfaceMesh& mesh, std::span<const Vec3> normals,
                      const TangentSection& section);

/// Degree of (p,q) around a small loop of angular radius `radius` about the
/// unit vector x on the sphere.
int local_degree_on_sphere(const TangentSection& section, const Vec3& x,
                           double radius = 1e-3, int samples = 64);

/// Tangent frame at unit x obtained by projecting t1 and completing with
/// t2 = x cross t1.
void transported_frame(const Vec3& x, const Vec3& t1_ref, Vec3& t1, Vec3& t2);

/// Wrap an angle difference into (-pi, pi].
double wrap_angle(double a);

}  // namespace wavesym
