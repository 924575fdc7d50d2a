#include <doctest.h>

#include <sstream>

#include "wavesym/error.hpp"
#include "wavesym/mesh.hpp"

using namespace wavesym;

namespace {

// n x m grid with both directions identified.
SurfaceMesh torus_grid(int n, int m) {
  SurfaceMesh t;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) t.vertices.push_back(Vec3(i, j, 0));
  }
  auto id = [&](int i, int j) { return (i % n) * m + (j % m); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      t.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      t.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return t;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("icosphere counts and topology") {
  for (int s = 0; s <= 4; ++s) {
    const SurfaceMesh ico = icosphere(s);
    const int f = 20 << (2 * s);
    CHECK(ico.num_faces() == f);
    CHECK(ico.num_vertices() == 2 + f / 2);
    CHECK(euler_characteristic(ico) == 2);
    CHECK(genus(ico) == 0);
    for (const Vec3& v : ico.vertices) CHECK(std::abs(v.norm() - 1.0) < 1e-14);
    // Counter-clockwise seen from outside.
    for (const Face& tri : ico.faces) {
      const Vec3& a = ico.vertices[tri[0]];
      const Vec3& b = ico.vertices[tri[1]];
      const Vec3& c = ico.vertices[tri[2]];
      REQUIRE((b - a).cross(c - a).dot(a + b + c) > 0.0);
    }
  }
}

TEST_CASE("torus genus and two spheres") {
  const SurfaceMesh t = torus_grid(6, 5);
  CHECK(euler_characteristic(t) == 0);
  CHECK(genus(t) == 1);

  SurfaceMesh two = icosphere(1);
  const int nv = two.num_vertices();
  const SurfaceMesh other = icosphere(1);
  for (const Vec3& v : other.vertices) two.vertices.push_back(v + Vec3(3, 0, 0));
  for (Face f : other.faces) two.faces.push_back({f[0] + nv, f[1] + nv, f[2] + nv});
  CHECK(euler_characteristic(two) == 4);
  CHECK(connected_components(two) == 2);
  CHECK(kind_of([&] { genus(two); }) == ErrorKind::NotConnected);
}

TEST_CASE("open mesh: boundary loops and NotClosed") {
  SurfaceMesh disk = icosphere(2);
  disk.faces.erase(disk.faces.begin());
  CHECK(edge_stats(disk).boundary_edges == 3);
  CHECK(kind_of([&] { euler_characteristic(disk); }) == ErrorKind::NotClosed);
  const auto loops = boundary_loops(disk);
  REQUIRE(loops.size() == 1);
  CHECK(loops[0].size() == 3);
}

TEST_CASE("orientation repair") {
  SurfaceMesh ico = icosphere(2);
  std::swap(ico.faces[5][0], ico.faces[5][1]);
  std::swap(ico.faces[17][1], ico.faces[17][2]);
  REQUIRE(orient_consistently(ico));
  for (const Face& tri : ico.faces) {
    const Vec3& a = ico.vertices[tri[0]];
    const Vec3& b = ico.vertices[tri[1]];
    const Vec3& c = ico.vertices[tri[2]];
    REQUIRE((b - a).cross(c - a).dot(a + b + c) > 0.0);
  }
}

TEST_CASE("vertex stars are closed cycles of the link") {
  const SurfaceMesh ico = icosphere(2);
  const auto stars = vertex_stars(ico);
  for (int v = 0; v < ico.num_vertices(); ++v) {
    REQUIRE(stars[v].closed);
    CHECK(stars[v].ring.size() == (v < 12 ? 5u : 6u));
  }
}

TEST_CASE("obj output") {
  SurfaceMesh tri;
  tri.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  tri.faces = {{0, 1, 2}};
  std::ostringstream os;
  write_obj(os, {{"a", &tri}, {"b", &tri}});
  CHECK(os.str() ==
        "o a\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n"
        "o b\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 4 5 6\n");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

}  // TEST_SUITE
