#include "wavesym/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <queue>
#include <utility>

#include "wavesym/error.hpp"

namespace wavesym {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey undirected(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

std::map<EdgeKey, std::vector<int>> edge_faces(const SurfaceMesh& mesh) {
  std::map<EdgeKey, std::vector<int>> edges;
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& tri = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      edges[undirected(tri[k], tri[(k + 1) % 3])].push_back(f);
    }
  }
  return edges;
}

bool has_directed_edge(const Face& tri, int a, int b) {
  for (int k = 0; k < 3; ++k) {
    if (tri[k] == a && tri[(k + 1) % 3] == b) return true;
  }
  return false;
}

int used_vertex_count(const SurfaceMesh& mesh) {
  std::vector<char> used(mesh.vertices.size(), 0);
  for (const Face& tri : mesh.faces) {
    for (int v : tri) used[v] = 1;
  }
  return static_cast<int>(std::count(used.begin(), used.end(), 1));
}

}  // namespace

SurfaceMesh icosphere(int subdivisions) {
  if (subdivisions < 0) {
    throw Error(ErrorKind::InvalidArgument, "subdivisions must be >= 0");
  }
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  SurfaceMesh mesh;
  const double base[12][3] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                              {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                              {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (const auto& b : base) mesh.vertices.push_back(Vec3(b[0], b[1], b[2]).normalized());
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int level = 0; level < subdivisions; ++level) {
    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int a, int b) {
      const EdgeKey key = undirected(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int id = mesh.num_vertices();
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Face> next;
    next.reserve(mesh.faces.size() * 4);
    for (const Face& tri : mesh.faces) {
      const int a = mid(tri[0], tri[1]);
      const int b = mid(tri[1], tri[2]);
      const int c = mid(tri[2], tri[0]);
      next.push_back({tri[0], a, c});
      next.push_back({tri[1], b, a});
      next.push_back({tri[2], c, b});
      next.push_back({a, b, c});
    }
    mesh.faces = std::move(next);
  }
  return mesh;
}

EdgeStats edge_stats(const SurfaceMesh& mesh) {
  EdgeStats stats;
  for (const auto& [key, faces] : edge_faces(mesh)) {
    ++stats.edges;
    if (faces.size() == 1) ++stats.boundary_edges;
    if (faces.size() > 2) ++stats.nonmanifold_edges;
  }
  return stats;
}

int euler_characteristic(const SurfaceMesh& mesh) {
  const EdgeStats stats = edge_stats(mesh);
  if (stats.boundary_edges != 0 || stats.nonmanifold_edges != 0) {
    throw Error(ErrorKind::NotClosed,
                std::to_string(stats.boundary_edges) + " boundary and " +
                    std::to_string(stats.nonmanifold_edges) + " non-manifold edges");
  }
  return used_vertex_count(mesh) - stats.edges + mesh.num_faces();
}

int connected_components(const SurfaceMesh& mesh) {
  std::vector<int> parent(mesh.vertices.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Face& tri : mesh.faces) {
    for (int k = 1; k < 3; ++k) parent[find(tri[k])] = find(tri[0]);
  }
  std::vector<char> is_root(mesh.vertices.size(), 0);
  for (const Face& tri : mesh.faces) is_root[find(tri[0])] = 1;
  return static_cast<int>(std::count(is_root.begin(), is_root.end(), 1));
}

int genus(const SurfaceMesh& mesh) {
  const int chi = euler_characteristic(mesh);
  if (connected_components(mesh) != 1) {
    throw Error(ErrorKind::NotConnected, "genus needs a connected surface");
  }
  SurfaceMesh copy = mesh;
  if (!orient_consistently(copy)) {
    throw Error(ErrorKind::InvalidArgument, "surface is not orientable");
  }
  return (2 - chi) / 2;
}

std::vector<std::vector<int>> boundary_loops(const SurfaceMesh& mesh) {
  std::map<int, int> next;
  for (const auto& [key, faces] : edge_faces(mesh)) {
    if (faces.size() != 1) continue;
    const Face& tri = mesh.faces[faces[0]];
    int a = key.first;
    int b = key.second;
    if (!has_directed_edge(tri, a, b)) std::swap(a, b);
    if (!next.emplace(a, b).second) {
      throw Error(ErrorKind::InvalidArgument,
                  "pinched boundary at vertex " + std::to_string(a));
    }
  }
  std::vector<std::vector<int>> loops;
  std::map<int, char> visited;
  for (const auto& [start, unused] : next) {
    if (visited.count(start)) continue;
    std::vector<int> loop;
    int v = start;
    while (!visited.count(v)) {
      visited[v] = 1;
      loop.push_back(v);
      auto it = next.find(v);
      if (it == next.end()) {
        throw Error(ErrorKind::InvalidArgument, "open boundary chain");
      }
      v = it->second;
    }
    if (v != start) throw Error(ErrorKind::InvalidArgument, "boundary is not a simple cycle");
    loops.push_back(std::move(loop));
  }
  return loops;
}

bool orient_consistently(SurfaceMesh& mesh) {
  const auto edges = edge_faces(mesh);
  std::vector<std::vector<int>> adjacency(mesh.faces.size());
  for (const auto& [key, faces] : edges) {
    for (std::size_t i = 0; i < faces.size(); ++i) {
      for (std::size_t j = 0; j < faces.size(); ++j) {
        if (i != j) adjacency[faces[i]].push_back(faces[j]);
      }
    }
  }
  std::vector<char> visited(mesh.faces.size(), 0);
  for (int seed = 0; seed < mesh.num_faces(); ++seed) {
    if (visited[seed]) continue;
    visited[seed] = 1;
    std::queue<int> pending;
    pending.push(seed);
    while (!pending.empty()) {
      const int f = pending.front();
      pending.pop();
      const Face& tri = mesh.faces[f];
      for (int g : adjacency[f]) {
        // Shared edge a->b in f must appear as b->a in g.
        for (int k = 0; k < 3; ++k) {
          const int a = tri[k];
          const int b = tri[(k + 1) % 3];
          Face& other = mesh.faces[g];
          const bool shares = std::find(other.begin(), other.end(), a) != other.end() &&
                              std::find(other.begin(), other.end(), b) != other.end();
          if (!shares) continue;
          const bool same_direction = has_directed_edge(other, a, b);
          if (!visited[g]) {
            if (same_direction) std::swap(other[1], other[2]);
            visited[g] = 1;
            pending.push(g);
          } else if (same_direction) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

std::vector<VertexStar> vertex_stars(const SurfaceMesh& mesh) {
  std::vector<std::vector<std::pair<int, int>>> opposite(mesh.vertices.size());
  for (const Face& tri : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      opposite[tri[k]].emplace_back(tri[(k + 1) % 3], tri[(k + 2) % 3]);
    }
  }
  std::vector<VertexStar> stars(mesh.vertices.size());
  for (std::size_t v = 0; v < stars.size(); ++v) {
    std::map<int, std::vector<int>> link;
    for (const auto& [a, b] : opposite[v]) {
      link[a].push_back(b);
      link[b].push_back(a);
    }
    if (link.empty()) continue;
    int start = link.begin()->first;
    bool closed = true;
    for (const auto& [u, nbrs] : link) {
      if (nbrs.size() == 1) {
        start = u;
        closed = false;
        break;
      }
    }
    VertexStar& star = stars[v];
    star.closed = closed;
    int prev = -1;
    int cur = start;
    while (star.ring.size() <= link.size()) {
      star.ring.push_back(cur);
      int nxt = -1;
      for (int cand : link[cur]) {
        if (cand != prev) {
          nxt = cand;
          break;
        }
      }
      if (nxt == -1 || nxt == start) break;
      prev = cur;
      cur = nxt;
    }
  }
  return stars;
}

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_obj(std::ostream& os, const std::vector<ObjObject>& objects) {
  int offset = 1;
  for (const ObjObject& obj : objects) {
    os << "o " << obj.name << '\n';
    for (const Vec3& v : obj.mesh->vertices) {
      os << "v " << format_double(v.x()) << ' ' << format_double(v.y()) << ' '
         << format_double(v.z()) << '\n';
    }
    const SurfaceMesh& m = *obj.mesh;
    auto emit_face = [&](const Face& tri) {
      os << "f " << tri[0] + offset << ' ' << tri[1] + offset << ' ' << tri[2] + offset
         << '\n';
    };
    if (m.vertex_group.empty() || m.group_names.empty()) {
      for (const Face& tri : m.faces) emit_face(tri);
    } else {
      // A face belongs to the highest-numbered group among its vertices.
      for (int g = 0; g < static_cast<int>(m.group_names.size()); ++g) {
        os << "g " << m.group_names[g] << '\n';
        for (const Face& tri : m.faces) {
          const int fg = std::max({m.vertex_group[tri[0]], m.vertex_group[tri[1]],
                                   m.vertex_group[tri[2]]});
          if (fg == g) emit_face(tri);
        }
      }
    }
    offset += m.num_vertices();
  }
}

void write_obj(std::ostream& os, const SurfaceMesh& mesh) {
  write_obj(os, std::vector<ObjObject>{{"mesh", &mesh}});
}

}  // namespace wavesym
