#include "wavesym/eigenline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "wavesym/error.hpp"

namespace wavesym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSheetOffset = 0.05;  // radial separation of the sheets in OBJ output

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

struct RingEntry {
  int vertex;
  double angle;  // [0, pi)
};

// Sorted ring of (vertex, angle); cyclic order by increasing line angle.
void sort_ring(std::vector<RingEntry>& ring) {
  std::sort(ring.begin(), ring.end(), [](const RingEntry& a, const RingEntry& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.vertex < b.vertex);
  });
}

// Triangulates the band between two closed rings sorted by angle mod pi.
void zipper(const std::vector<RingEntry>& a, const std::vector<RingEntry>& b,
            std::vector<Face>& faces) {
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  auto angle_at = [](const std::vector<RingEntry>& r, int k) {
    const int n = static_cast<int>(r.size());
    return r[k % n].angle + kPi * (k / n);
  };
  int i = 0;
  int j = 0;
  while (i < na || j < nb) {
    const bool advance_a =
        j == nb || (i < na && angle_at(a, i + 1) <= angle_at(b, j + 1));
    if (advance_a) {
      faces.push_back({a[i % na].vertex, a[(i + 1) % na].vertex, b[j % nb].vertex});
      ++i;
    } else {
      faces.push_back({a[i % na].vertex, b[(j + 1) % nb].vertex, b[j % nb].vertex});
      ++j;
    }
  }
}

// Piecewise-linear periodic interpolation over a sorted ring.
double ring_interpolate(const std::vector<RingEntry>& ring, const std::vector<double>& values,
                        double theta) {
  const int n = static_cast<int>(ring.size());
  for (int k = 0; k < n; ++k) {
    const double a0 = ring[k].angle;
    const double a1 = k + 1 < n ? ring[k + 1].angle : ring[0].angle + kPi;
    double th = theta;
    if (th < a0) th += kPi;
    if (th >= a0 && th <= a1) {
      const double w = a1 > a0 ? (th - a0) / (a1 - a0) : 0.0;
      return (1.0 - w) * values[ring[k].vertex] + w * values[ring[(k + 1) % n].vertex];
    }
  }
  return values[ring[0].vertex];
}

bool face_contains(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  if (p.dot(a + b + c) <= 0.0) return false;
  return a.cross(b).dot(p) >= 0.0 && b.cross(c).dot(p) >= 0.0 && c.cross(a).dot(p) >= 0.0;
}

// Faces of the icosphere kept for the base surface: outside every disk and
// with no pinched boundary vertex.
std::vector<Face> base_faces(const SurfaceMesh& ico, const std::vector<Vec3>& points,
                             double rho) {
  std::vector<bool> inside(ico.vertices.size(), false);
  for (std::size_t v = 0; v < ico.vertices.size(); ++v) {
    for (const Vec3& p : points) {
      if (angle_between(ico.vertices[v], p) < rho) inside[v] = true;
    }
  }
  std::vector<Face> kept;
  for (const Face& f : ico.faces) {
    if (inside[f[0]] || inside[f[1]] || inside[f[2]]) continue;
    const bool holds_point = std::any_of(points.begin(), points.end(), [&](const Vec3& p) {
      return face_contains(ico.vertices[f[0]], ico.vertices[f[1]], ico.vertices[f[2]], p);
    });
    if (!holds_point) kept.push_back(f);
  }
  for (;;) {
    std::map<std::pair<int, int>, int> directed;
    for (const Face& f : kept) {
      for (int k = 0; k < 3; ++k) ++directed[{f[k], f[(k + 1) % 3]}];
    }
    std::map<int, int> out_boundary;
    for (const auto& [e, count] : directed) {
      if (!directed.count({e.second, e.first})) ++out_boundary[e.first];
    }
    std::vector<bool> pinched(ico.vertices.size(), false);
    bool any = false;
    for (const auto& [v, count] : out_boundary) {
      if (count > 1) pinched[v] = any = true;
    }
    if (!any) break;
    std::erase_if(kept, [&](const Face& f) { return pinched[f[0]] || pinched[f[1]] || pinched[f[2]]; });
  }
  return kept;
}

Vec3 tube_position(const Vec3& p, const Vec3& e1, const Vec3& e2, double rho, double theta,
                   double t_rel) {
  const Vec3 dir = (std::cos(rho) * p +
                    std::sin(rho) * (std::cos(2.0 * theta) * e1 + std::sin(2.0 * theta) * e2))
                       .normalized();
  return (1.0 + kSheetOffset * t_rel) * dir;
}

}  // namespace

AmbientSection crystal_section(const Crystal& crystal) {
  const Eigen::Matrix3d op = inverse_eps_matrix(crystal);
  return [op](const Vec3&) { return op; };
}

AmbientSection constant_trace_section(const Crystal& crystal) {
  const Eigen::Matrix3d op = inverse_eps_matrix(crystal);
  return [op](const Vec3& x) -> Eigen::Matrix3d {
    return op + 0.5 * x.dot(op * x) * Eigen::Matrix3d::Identity();
  };
}

Sym2Value section_value(const AmbientSection& section, const Vec3& x, const Vec3& t1,
                        const Vec3& t2) {
  return compress(section(x), t1, t2);
}

TangentSection traceless_of(const AmbientSection& section) {
  return [section](const Vec3& x, const Vec3& t1, const Vec3& t2) {
    return section_value(section, x, t1, t2).traceless();
  };
}

double s_r(const AmbientSection& section, const Vec3& x) {
  Vec3 t1;
  Vec3 t2;
  tangent_frame(x, t1, t2);
  return section_value(section, x, t1, t2).half_trace();
}

std::optional<int> EigenlineManifold::genus_if_connected() const {
  if (connected_components(mesh) != 1) return std::nullopt;
  return genus(mesh);
}

EigenlineManifold build_eigenline_manifold(const AmbientSection& section,
                                           const std::vector<Vec3>& multiplicity_points,
                                           const EigenlineOptions& options) {
  const double rho = options.tube_radius;
  const double eps = options.collar;
  if (!(rho > 0.0) || !(eps > 0.0) || options.subdivisions < 1 || options.interior_rings < 0) {
    throw Error(ErrorKind::InvalidArgument,
                "tube radius and collar must be positive, subdivisions >= 1");
  }
  std::vector<Vec3> points;
  for (const Vec3& p : multiplicity_points) {
    if (!(p.norm() > 0.0)) throw Error(ErrorKind::InvalidArgument, "zero multiplicity point");
    points.push_back(p.normalized());
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (angle_between(points[i], points[j]) <= 3.0 * rho) {
        throw Error(ErrorKind::InvalidArgument, "multiplicity points closer than 3 tube radii");
      }
    }
  }
  const TangentSection traceless = traceless_of(section);
  for (const Vec3& p : points) {
    Vec3 t1;
    Vec3 t2;
    tangent_frame(p, t1, t2);
    const Sym2Value s = section_value(section, p, t1, t2);
    if (s.traceless_norm() > 1e-8 * std::max(1.0, std::abs(s.t))) {
      throw Error(ErrorKind::InvalidArgument, "listed point is not a multiplicity point");
    }
    const int degree = local_degree_on_sphere(traceless, p);
    if (std::abs(degree) != 1) {
      throw Error(ErrorKind::GluingMismatch,
                  "section not transversal at a multiplicity point (local degree " +
                      std::to_string(degree) + ")");
    }
  }

  // Base surface: sphere minus disks, compacted to the vertices in use.
  const SurfaceMesh ico = icosphere(options.subdivisions);
  std::vector<Face> kept = base_faces(ico, points, rho);
  std::vector<int> remap(ico.vertices.size(), -1);
  for (const Face& f : kept) {
    for (int v : f) remap[v] = 0;
  }
  SurfaceMesh base;
  for (std::size_t v = 0; v < ico.vertices.size(); ++v) {
    if (remap[v] < 0) continue;
    remap[v] = base.num_vertices();
    base.vertices.push_back(ico.vertices[v]);
  }
  for (Face f : kept) {
    for (int& v : f) v = remap[v];
    base.faces.push_back(f);
  }
  const std::vector<std::vector<int>> loops = boundary_loops(base);
  const int k = static_cast<int>(points.size());
  {
    const EdgeStats es = edge_stats(base);
    const int chi_base = base.num_vertices() - es.edges + base.num_faces();
    if (static_cast<int>(loops.size()) != k || chi_base != 2 - k ||
        connected_components(base) != 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "tube radius incompatible with the mesh resolution (holes merged or lost)");
    }
  }
  // Assign each loop to the nearest point.
  std::vector<int> loop_of_point(k, -1);
  for (int l = 0; l < k; ++l) {
    Vec3 c = Vec3::Zero();
    for (int v : loops[l]) c += base.vertices[v];
    int best = 0;
    for (int i = 1; i < k; ++i) {
      if (angle_between(c, points[i]) < angle_between(c, points[best])) best = i;
    }
    if (loop_of_point[best] >= 0) {
      throw Error(ErrorKind::InvalidArgument, "two holes around one multiplicity point");
    }
    loop_of_point[best] = l;
  }

  EigenlineManifold m;
  m.collar = eps;
  m.base_boundary_loops = static_cast<int>(loops.size());
  SurfaceMesh& mesh = m.mesh;
  const int nb = base.num_vertices();
  mesh.group_names = {"sheet1", "sheet2"};
  auto add_vertex = [&](const Vec3& pos, Region r, int group, int cyl, const Vec3& bp) {
    mesh.vertices.push_back(pos);
    mesh.vertex_group.push_back(group);
    m.region.push_back(r);
    m.cylinder_of.push_back(cyl);
    m.line_angle.push_back(0.0);
    m.collar_t.push_back(0.0);
    m.base_point.push_back(bp);
    m.on_seam.push_back(false);
    m.lambda.push_back(0.0);
    m.lambda0.push_back(0.0);
    return mesh.num_vertices() - 1;
  };
  for (int sheet = 0; sheet < 2; ++sheet) {
    const double scale = sheet == 0 ? 1.0 - kSheetOffset : 1.0 + kSheetOffset;
    for (const Vec3& x : base.vertices) {
      add_vertex(scale * x, sheet == 0 ? Region::Sheet1 : Region::Sheet2, sheet, -1, x);
    }
  }
  for (int sheet = 0; sheet < 2; ++sheet) {
    for (const Face& f : base.faces) {
      mesh.faces.push_back({f[0] + sheet * nb, f[1] + sheet * nb, f[2] + sheet * nb});
    }
  }

  // Sheet fields.
  std::vector<double> sr_at(2 * nb);
  for (int v = 0; v < nb; ++v) {
    Vec3 t1;
    Vec3 t2;
    tangent_frame(base.vertices[v], t1, t2);
    const Sym2Value s = section_value(section, base.vertices[v], t1, t2);
    const Eigenvalues ev = eigenvalues(s);
    const double half = s.half_trace();
    m.lambda[v] = ev.lower;
    m.lambda[v + nb] = ev.upper;
    m.lambda0[v] = ev.lower - half;
    m.lambda0[v + nb] = ev.upper - half;
    sr_at[v] = sr_at[v + nb] = half;
  }

  for (int i = 0; i < k; ++i) {
    const Vec3& p = points[i];
    const std::vector<int>& loop = loops[loop_of_point[i]];
    const int n = static_cast<int>(loop.size());
    Vec3 e1;
    Vec3 e2;
    tangent_frame(p, e1, e2);

    // Eigenline angles on the boundary circle in a frame carried from p.
    std::vector<RingEntry> ring1;
    std::vector<RingEntry> ring2;
    std::vector<double> lower(n);
    for (int a = 0; a < n; ++a) {
      const Vec3& x = base.vertices[loop[a]];
      Vec3 u1;
      Vec3 u2;
      transported_frame(x, e1, u1, u2);
      EigenlineAngles ang;
      try {
        ang = eigenline_angles(section_value(section, x, u1, u2));
      } catch (const Error&) {
        throw Error(ErrorKind::GluingMismatch, "multiple point on a gluing circle");
      }
      lower[a] = ang.lower;
      ring1.push_back({loop[a], ang.lower});
      ring2.push_back({loop[a] + nb, ang.upper});
    }
    double total = 0.0;
    int sign = 0;
    for (int a = 0; a < n; ++a) {
      const double step = std::remainder(lower[(a + 1) % n] - lower[a], kPi);
      const int s = step > 0.0 ? 1 : step < 0.0 ? -1 : 0;
      if (s == 0 || std::abs(step) >= 0.5 * kPi || (sign != 0 && s != sign)) {
        throw Error(ErrorKind::GluingMismatch,
                    "boundary eigenline map is not monotone on circle " + std::to_string(i));
      }
      sign = s;
      total += step;
    }
    if (std::abs(std::abs(total) - kPi) > 1e-6) {
      throw Error(ErrorKind::GluingMismatch, "boundary eigenline map has degree " +
                                                 std::to_string(total / kPi) + " on circle " +
                                                 std::to_string(i));
    }
    sort_ring(ring1);
    sort_ring(ring2);

    const int group = static_cast<int>(mesh.group_names.size());
    mesh.group_names.push_back("cyl_" + std::to_string(i));
    Cylinder cyl;
    cyl.point = p;
    cyl.boundary_size = n;
    cyl.degree = sign;
    const double sr_p = s_r(section, p);

    std::vector<std::vector<RingEntry>> rings;
    rings.push_back(ring1);
    const int levels = options.interior_rings + 1;
    for (int lvl = -levels + 1; lvl <= levels - 1; ++lvl) {
      const double t = eps * lvl / levels;
      std::vector<RingEntry> ring;
      const std::vector<RingEntry>& end_ring = t < 0.0 ? ring1 : ring2;
      for (int a = 0; a < n; ++a) {
        const double theta = kPi * a / n;
        const int v = add_vertex(tube_position(p, e1, e2, rho, theta, t / eps), Region::Cylinder,
                                 group, i, p);
        m.line_angle[v] = theta;
        m.collar_t[v] = t;
        const double w = std::abs(t) / eps;
        const double lam_end = ring_interpolate(end_ring, m.lambda, theta);
        const double l0_end = ring_interpolate(end_ring, m.lambda0, theta);
        m.lambda[v] = sr_p + w * (lam_end - sr_p);
        m.lambda0[v] = w * l0_end;
        ring.push_back({v, theta});
        if (lvl == 0) cyl.core.push_back(v);
      }
      rings.push_back(std::move(ring));
    }
    rings.push_back(ring2);
    for (std::size_t r = 0; r + 1 < rings.size(); ++r) zipper(rings[r], rings[r + 1], mesh.faces);
    for (const RingEntry& e : ring1) {
      m.on_seam[e.vertex] = true;
      m.line_angle[e.vertex] = e.angle;
      m.collar_t[e.vertex] = -eps;
    }
    for (const RingEntry& e : ring2) {
      m.on_seam[e.vertex] = true;
      m.line_angle[e.vertex] = e.angle;
      m.collar_t[e.vertex] = eps;
    }
    m.cylinders.push_back(std::move(cyl));
  }

  const EdgeStats es = edge_stats(mesh);
  if (es.boundary_edges != 0 || es.nonmanifold_edges != 0) {
    throw Error(ErrorKind::GluingMismatch, "glued surface is not a closed manifold");
  }
  if (!orient_consistently(mesh)) {
    throw Error(ErrorKind::GluingMismatch, "glued surface is not orientable");
  }
  return m;
}

const char* to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::Minimum: return "minimum";
    case CriticalKind::Maximum: return "maximum";
    case CriticalKind::Saddle: return "saddle";
  }
  return "unknown";
}

namespace {

double eigen_on_sphere(const AmbientSection& section, int sheet, const Vec3& x) {
  Vec3 t1;
  Vec3 t2;
  tangent_frame(x, t1, t2);
  const Eigenvalues ev = eigenvalues(section_value(section, x, t1, t2));
  return sheet == 1 ? ev.lower : ev.upper;
}

}  // namespace

SheetExtremum refine_sheet_extremum(const AmbientSection& section, int sheet, bool maximum,
                                    const Vec3& start, double step) {
  const double sign = maximum ? -1.0 : 1.0;
  auto g = [&](const Vec3& x) { return sign * eigen_on_sphere(section, sheet, x); };
  Vec3 x = start.normalized();
  double gx = g(x);
  for (int iter = 0; iter < 20000 && step > 1e-13; ++iter) {
    Vec3 t1;
    Vec3 t2;
    tangent_frame(x, t1, t2);
    bool moved = false;
    for (const Vec3& dir : {t1, t2}) {
      for (double s : {1.0, -1.0}) {
        const Vec3 y = (x + s * step * dir).normalized();
        const double gy = g(y);
        if (gy < gx) {
          x = y;
          gx = gy;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return {sheet == 1 ? "sheet1" : "sheet2", maximum, x, sign * gx};
}

CriticalReport critical_scan(const EigenlineManifold& manifold, const AmbientSection& section) {
  const SurfaceMesh& mesh = manifold.mesh;
  const std::vector<VertexStar> stars = vertex_stars(mesh);
  const std::vector<double>& lam = manifold.lambda;
  auto above = [&](int a, int b) { return lam[a] > lam[b] || (lam[a] == lam[b] && a > b); };

  CriticalReport report;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const std::vector<int>& ring = stars[v].ring;
    if (ring.empty()) continue;
    const int n = static_cast<int>(ring.size());
    int changes = 0;
    for (int a = 0; a < n; ++a) {
      if (above(ring[a], v) != above(ring[(a + 1) % n], v)) ++changes;
    }
    const int index = 1 - changes / 2;
    report.index_sum += index;
    if (index == 0) continue;
    CriticalPoint c;
    c.vertex = v;
    c.where = mesh.group_names[mesh.vertex_group[v]];
    c.x = mesh.vertices[v];
    c.lambda = lam[v];
    c.index = index;
    if (changes == 0) {
      c.kind = above(ring[0], v) ? CriticalKind::Minimum : CriticalKind::Maximum;
    } else {
      c.kind = CriticalKind::Saddle;
    }
    report.criticals.push_back(c);
  }

  // Extrema of each sheet, started from the best sheet vertex.
  const int nv = mesh.num_vertices();
  double spacing = 0.0;
  for (const Face& f : mesh.faces) {
    if (manifold.region[f[0]] == Region::Sheet1) {
      spacing = angle_between(manifold.base_point[f[0]], manifold.base_point[f[1]]);
      break;
    }
  }
  if (spacing == 0.0) spacing = 0.1;
  for (int sheet = 1; sheet <= 2; ++sheet) {
    const Region region = sheet == 1 ? Region::Sheet1 : Region::Sheet2;
    for (bool maximum : {false, true}) {
      int best = -1;
      for (int v = 0; v < nv; ++v) {
        if (manifold.region[v] != region) continue;
        if (best < 0 || (maximum ? above(v, best) : above(best, v))) best = v;
      }
      if (best < 0) continue;
      report.sheet_extrema.push_back(
          refine_sheet_extremum(section, sheet, maximum, manifold.base_point[best], spacing));
    }
  }

  for (std::size_t i = 0; i < manifold.cylinders.size(); ++i) {
    const Vec3& p = manifold.cylinders[i].point;
    Vec3 t1;
    Vec3 t2;
    tangent_frame(p, t1, t2);
    constexpr double h = 1e-6;
    const double d1 =
        (s_r(section, (p + h * t1).normalized()) - s_r(section, (p - h * t1).normalized())) /
        (2.0 * h);
    const double d2 =
        (s_r(section, (p + h * t2).normalized()) - s_r(section, (p - h * t2).normalized())) /
        (2.0 * h);
    NecessaryCondition nc;
    nc.cylinder = static_cast<int>(i);
    nc.point = p;
    nc.ds_r_norm = std::hypot(d1, d2);
    nc.ds_r_vanishes = nc.ds_r_norm <= 1e-8;
    report.necessary_condition.push_back(nc);
  }
  return report;
}

}  // namespace wavesym
