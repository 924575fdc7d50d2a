#include "wavesym/fresnel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "wavesym/error.hpp"

namespace wavesym {

Crystal Crystal::make(double e1, double e2, double e3) {
  for (double e : {e1, e2, e3}) {
    if (!std::isfinite(e) || e <= 0.0) {
      throw Error(ErrorKind::InvalidArgument, "dielectric eigenvalues must be positive");
    }
  }
  return {e1, e2, e3};
}

bool Crystal::biaxial() const {
  auto distinct = [](double a, double b) {
    return std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b));
  };
  return distinct(eps1, eps2) && distinct(eps2, eps3) && distinct(eps1, eps3);
}

std::pair<Vec3, Vec3> maxwell_apply(const Crystal& crystal, const Vec3& xi, const Vec3& e,
                                    const Vec3& b) {
  const Vec3 d = crystal.inverse_eps().cwiseProduct(e);
  return {xi.cross(b), -xi.cross(d)};
}

void tangent_frame(const Vec3& x, Vec3& t1, Vec3& t2) {
  const Vec3 a = std::abs(x.z()) > 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  t1 = a.cross(x).normalized();
  t2 = x.cross(t1);
}

Eigen::Matrix3d inverse_eps_matrix(const Crystal& crystal) {
  return crystal.inverse_eps().asDiagonal();
}

Sym2Value compress(const Eigen::Matrix3d& op, const Vec3& t1, const Vec3& t2) {
  const Vec3 a1 = op * t1;
  const Vec3 a2 = op * t2;
  // Symmetrize the off-diagonal entry against rounding.
  return Sym2Value::from_matrix(a1.dot(t1), 0.5 * (a1.dot(t2) + a2.dot(t1)), a2.dot(t2));
}

Sym2Value compressed_operator(const Crystal& crystal, const Vec3& x) {
  Vec3 t1;
  Vec3 t2;
  tangent_frame(x, t1, t2);
  return compress(inverse_eps_matrix(crystal), t1, t2);
}

TangentSection crystal_tangent_section(const Crystal& crystal) {
  const Eigen::Matrix3d op = inverse_eps_matrix(crystal);
  return [op](const Vec3&, const Vec3& t1, const Vec3& t2) {
    return compress(op, t1, t2).traceless();
  };
}

FresnelSample fresnel_sample(const Crystal& crystal, const Vec3& xi) {
  const Eigenvalues ev = eigenvalues(compressed_operator(crystal, xi));
  FresnelSample s;
  s.xi = xi;
  s.lam1 = ev.lower;
  s.lam2 = ev.upper;
  s.inner = std::sqrt(ev.lower) * xi;
  s.outer = std::sqrt(ev.upper) * xi;
  return s;
}

namespace {

double residual_sq(const Crystal& crystal, const Vec3& x) {
  const Sym2Value s = compressed_operator(crystal, x);
  return s.p * s.p + s.q * s.q;
}

Vec3 coordinate_descent(const Crystal& crystal, Vec3 x, double step, double tol, int max_iter) {
  double fx = residual_sq(crystal, x);
  for (int iter = 0; iter < max_iter && std::sqrt(fx) > tol; ++iter) {
    Vec3 t1;
    Vec3 t2;
    tangent_frame(x, t1, t2);
    bool moved = false;
    for (const Vec3& dir : {t1, t2}) {
      for (double sign : {1.0, -1.0}) {
        const Vec3 y = (x + sign * step * dir).normalized();
        const double fy = residual_sq(crystal, y);
        if (fy < fx) {
          x = y;
          fx = fy;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return x;
}

// Newton on (p, q) in a frame carried along from the start point; the zero
// is transversal so this converges quadratically from the descent output.
Vec3 newton_polish(const Crystal& crystal, Vec3 x) {
  const Eigen::Matrix3d op = inverse_eps_matrix(crystal);
  Vec3 e1;
  Vec3 e2;
  tangent_frame(x, e1, e2);
  auto pq = [&](const Vec3& y) {
    Vec3 u1;
    Vec3 u2;
    transported_frame(y, e1, u1, u2);
    const Sym2Value s = compress(op, u1, u2);
    return Eigen::Vector2d(s.p, s.q);
  };
  constexpr double h = 1e-7;
  for (int iter = 0; iter < 20; ++iter) {
    const Eigen::Vector2d r = pq(x);
    Vec3 t1;
    Vec3 t2;
    transported_frame(x, e1, t1, t2);
    Eigen::Matrix2d jac;
    jac.col(0) = (pq((x + h * t1).normalized()) - pq((x - h * t1).normalized())) / (2.0 * h);
    jac.col(1) = (pq((x + h * t2).normalized()) - pq((x - h * t2).normalized())) / (2.0 * h);
    if (std::abs(jac.determinant()) < 1e-300) break;
    const Eigen::Vector2d d = jac.partialPivLu().solve(-r);
    const Vec3 y = (x + d(0) * t1 + d(1) * t2).normalized();
    if (pq(y).norm() >= r.norm()) break;
    x = y;
  }
  return x;
}

}  // namespace

std::vector<SingularDirection> singular_directions(const Crystal& crystal,
                                                   const SingularSearchOptions& options) {
  if (!crystal.biaxial()) {
    throw Error(ErrorKind::NotBiaxial, "repeated dielectric eigenvalue");
  }
  const SurfaceMesh seeds = icosphere(options.seed_subdivisions);
  const int nv = seeds.num_vertices();
  std::vector<double> f(nv);
  for (int v = 0; v < nv; ++v) f[v] = residual_sq(crystal, seeds.vertices[v]);

  std::vector<std::set<int>> adj(nv);
  for (const Face& tri : seeds.faces) {
    for (int k = 0; k < 3; ++k) {
      adj[tri[k]].insert(tri[(k + 1) % 3]);
      adj[tri[k]].insert(tri[(k + 2) % 3]);
    }
  }
  const double spacing = 1.1071487177940904 / std::ldexp(1.0, options.seed_subdivisions);

  std::vector<SingularDirection> found;
  const TangentSection section = crystal_tangent_section(crystal);
  for (int v = 0; v < nv; ++v) {
    const bool is_min = std::all_of(adj[v].begin(), adj[v].end(), [&](int w) {
      return f[v] < f[w] || (f[v] == f[w] && v < w);
    });
    if (!is_min) continue;
    Vec3 x = coordinate_descent(crystal, seeds.vertices[v], spacing, options.tol,
                                options.max_iterations);
    x = newton_polish(crystal, x);
    const double residual = std::sqrt(residual_sq(crystal, x));
    if (residual > options.tol) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const SingularDirection& d) {
      return std::atan2(d.x.cross(x).norm(), d.x.dot(x)) < options.dedupe_angle;
    });
    if (duplicate) continue;
    found.push_back({x, residual, local_degree_on_sphere(section, x)});
  }
  if (found.size() != 4) {
    throw Error(ErrorKind::DegenerateField,
                "expected 4 singular directions, found " + std::to_string(found.size()));
  }
  std::sort(found.begin(), found.end(), [](const SingularDirection& a, const SingularDirection& b) {
    if (a.x.z() != b.x.z()) return a.x.z() > b.x.z();
    if (a.x.x() != b.x.x()) return a.x.x() > b.x.x();
    return a.x.y() > b.x.y();
  });
  return found;
}

FresnelMesh fresnel_mesh(const Crystal& crystal, int subdivisions) {
  if (subdivisions < 2) {
    throw Error(ErrorKind::InvalidArgument, "fresnel mesh needs at least 2 subdivisions");
  }
  const SurfaceMesh dirs = icosphere(subdivisions);
  FresnelMesh out;
  out.inner.faces = dirs.faces;
  out.outer.faces = dirs.faces;
  out.inner.vertices.reserve(dirs.vertices.size());
  out.outer.vertices.reserve(dirs.vertices.size());
  for (const Vec3& x : dirs.vertices) {
    const FresnelSample s = fresnel_sample(crystal, x);
    out.inner.vertices.push_back(s.inner);
    out.outer.vertices.push_back(s.outer);
    out.gap.push_back(std::sqrt(s.lam2) - std::sqrt(s.lam1));
  }
  return out;
}

}  // namespace wavesym
