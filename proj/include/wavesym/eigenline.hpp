#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavesym/fresnel.hpp"
#include "wavesym/mesh.hpp"
#include "wavesym/sym2.hpp"

namespace wavesym {

/// Field of ambient symmetric operators on the unit sphere; the operator on
/// the tangent plane at x is its compression.
using AmbientSection = std::function<Eigen::Matrix3d(const Vec3& x)>;

AmbientSection crystal_section(const Crystal& crystal);

/// eps^-1 + (x^T eps^-1 x / 2) I: same traceless part as the crystal, with
/// constant half-trace.
AmbientSection constant_trace_section(const Crystal& crystal);

Sym2Value section_value(const AmbientSection& section, const Vec3& x, const Vec3& t1,
                        const Vec3& t2);
TangentSection traceless_of(const AmbientSection& section);

/// Half-trace of the compression at x (frame independent).
double s_r(const AmbientSection& section, const Vec3& x);

enum class Region { Sheet1, Sheet2, Cylinder };

struct Cylinder {
  Vec3 point = Vec3::UnitZ();
  std::vector<int> core;   // vertex ring at t = 0, by increasing line angle
  int boundary_size = 0;   // vertices on each glued boundary circle
  int degree = 0;          // +-1, orientation of the boundary-angle map
};

struct EigenlineOptions {
  int subdivisions = 4;
  double tube_radius = 0.1;  // rho, geodesic
  double collar = 1.0;       // epsilon, range of the collar parameter
  int interior_rings = 1;    // per collar half, between boundary and core
};

struct EigenlineManifold {
  SurfaceMesh mesh;  // groups sheet1, sheet2, cyl_0, ...
  std::vector<Region> region;
  std::vector<int> cylinder_of;   // -1 off the cylinders
  std::vector<double> line_angle; // cylinder vertices: angle in [0, pi)
  std::vector<double> collar_t;   // cylinder vertices: t in [-eps, eps]
  std::vector<Vec3> base_point;   // sheet vertices: the point of S^2
  std::vector<bool> on_seam;      // shared between a sheet and a cylinder
  std::vector<double> lambda;     // lambda_s
  std::vector<double> lambda0;    // lambda_s0
  std::vector<Cylinder> cylinders;
  int base_boundary_loops = 0;
  double collar = 1.0;

  int chi() const { return euler_characteristic(mesh); }
  /// Empty when the surface is disconnected (no multiplicity points).
  std::optional<int> genus_if_connected() const;
};

/// Two copies of the sphere minus geodesic disks about the multiplicity
/// points, joined by one cylinder per point along the eigenline-angle map.
/// Each listed point must be a transversal zero of the traceless part; the
/// list need not contain all zeros. Throws InvalidArgument for bad input and
/// GluingMismatch when a boundary-angle map is not a degree +-1 circle map.
EigenlineManifold build_eigenline_manifold(const AmbientSection& section,
                                           const std::vector<Vec3>& multiplicity_points,
                                           const EigenlineOptions& options = {});

enum class CriticalKind { Minimum, Maximum, Saddle };

const char* to_string(CriticalKind kind);

struct CriticalPoint {
  int vertex = -1;
  std::string where;  // vertex group name
  Vec3 x = Vec3::Zero();
  double lambda = 0.0;
  CriticalKind kind = CriticalKind::Saddle;
  int index = 0;  // 1 - (sign changes)/2
};

struct SheetExtremum {
  std::string sheet;
  bool maximum = false;
  Vec3 x = Vec3::Zero();
  double value = 0.0;
};

struct NecessaryCondition {
  int cylinder = 0;
  Vec3 point = Vec3::Zero();
  double ds_r_norm = 0.0;
  /// Whether d s_R vanishes at the point (within 1e-8). For isolated
  /// multiplicity points the condition is vacuous; no classification.
  bool ds_r_vanishes = false;
};

struct CriticalReport {
  std::vector<CriticalPoint> criticals;
  int index_sum = 0;  // equals chi on a closed surface
  std::vector<SheetExtremum> sheet_extrema;
  std::vector<NecessaryCondition> necessary_condition;
};

/// Vertex-star scan of lambda_s with ties broken by vertex index, extrema of
/// lambda_1 and lambda_2 refined on the sphere, and d s_R at each cylinder.
CriticalReport critical_scan(const EigenlineManifold& manifold, const AmbientSection& section);

/// Sphere extremum of the i-th eigenvalue (i = 1 or 2) by coordinate
/// descent from `start`.
SheetExtremum refine_sheet_extremum(const AmbientSection& section, int sheet, bool maximum,
                                    const Vec3& start, double step);

}  // namespace wavesym
