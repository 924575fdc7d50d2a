#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wavesym {

using Vec3 = Eigen::Vector3d;
using Face = std::array<int, 3>;

/// Triangle mesh with optional named vertex groups (used for OBJ export).
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  /// Index into group_names per vertex; empty when ungrouped.
  std::vector<int> vertex_group;
  std::vector<std::string> group_names;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
};

/// Icosahedron subdivided `subdivisions` times with vertices on the unit
/// sphere. Vertex order is deterministic: the 12 base vertices, then edge
/// midpoints in creation order. Faces are counter-clockwise seen from outside.
SurfaceMesh icosphere(int subdivisions);

struct EdgeStats {
  int edges = 0;
  int boundary_edges = 0;
  int nonmanifold_edges = 0;  // shared by more than two faces
};

EdgeStats edge_stats(const SurfaceMesh& mesh);

/// V - E + F counting only vertices referenced by faces. Throws NotClosed.
int euler_characteristic(const SurfaceMesh& mesh);

/// (2 - chi)/2 for a closed orientable connected mesh. Throws NotClosed or
/// NotConnected.
int genus(const SurfaceMesh& mesh);

/// Connected components of the face-adjacency graph.
int connected_components(const SurfaceMesh& mesh);

/// Boundary cycles as ordered vertex loops (first vertex not repeated).
/// Throws InvalidArgument if a boundary vertex is pinched.
std::vector<std::vector<int>> boundary_loops(const SurfaceMesh& mesh);

/// Flips faces so neighbours induce opposite edge directions. Returns false
/// if no consistent orientation exists.
bool orient_consistently(SurfaceMesh& mesh);

/// Vertex neighbours in cyclic order around each interior vertex. For
/// boundary vertices the ring is open and `closed` is false.
struct VertexStar {
  std::vector<int> ring;
  bool closed = false;
};

std::vector<VertexStar> vertex_stars(const SurfaceMesh& mesh);

/// Wavefront OBJ with one `o` block per entry of `objects`; face indices are
/// global and 1-based. Vertex groups become `g` statements when present.
void write_obj(std::ostream& os, const SurfaceMesh& mesh);

struct ObjObject {
  std::string name;
  const SurfaceMesh* mesh;
};

void write_obj(std::ostream& os, const std::vector<ObjObject>& objects);

/// Fixed-width floating point text with 17 significant digits.
std::string format_double(double value);

}  // namespace wavesym
