#include "wavesym/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <tuple>

#include "wavesym/error.hpp"

namespace wavesym {

namespace {

constexpr double kPi = std::numbers::pi;

bool lex_less(Point2 a, Point2 b) {
  return std::tie(a.x1, a.x2) < std::tie(b.x1, b.x2);
}

double distance(Point2 a, Point2 b) { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }

double signed_area(const std::vector<Point2>& loop) {
  double area = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point2& a = loop[i];
    const Point2& b = loop[(i + 1) % loop.size()];
    area += a.x1 * b.x2 - b.x1 * a.x2;
  }
  return 0.5 * area;
}

double raw_det(const ChartSymbolField& field, Point2 x) { return field.sampler(x).det(); }

// Uniform node grid of f = det M.
struct DetGrid {
  int n = 0;  // cells per axis
  double h1 = 0.0;
  double h2 = 0.0;
  std::vector<double> values;  // (n+1)^2, row-major in x2
  double max_abs = 0.0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * (n + 1) + i]; }
};

DetGrid sample_grid(const ChartSymbolField& field) {
  DetGrid g;
  g.n = field.resolution;
  g.h1 = (field.domain.x1_max - field.domain.x1_min) / g.n;
  g.h2 = (field.domain.x2_max - field.domain.x2_min) / g.n;
  g.values.resize(static_cast<std::size_t>(g.n + 1) * (g.n + 1));
  for (int j = 0; j <= g.n; ++j) {
    for (int i = 0; i <= g.n; ++i) {
      const Point2 x{field.domain.x1_min + i * g.h1, field.domain.x2_min + j * g.h2};
      const double f = raw_det(field, x);
      g.values[static_cast<std::size_t>(j) * (g.n + 1) + i] = f;
      g.max_abs = std::max(g.max_abs, std::abs(f));
    }
  }
  return g;
}

// Root of f on the segment [a, b] where f(a) >= 0 > f(b) or vice versa.
Point2 bisect_edge(const ChartSymbolField& field, Point2 a, double fa, Point2 b, double fb,
                   double target) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  const bool a_pos = fa >= 0.0;
  double lo = 0.0;
  double hi = 1.0;
  Point2 best = std::abs(fa) <= std::abs(fb) ? a : b;
  double best_abs = std::min(std::abs(fa), std::abs(fb));
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const Point2 x{a.x1 + mid * (b.x1 - a.x1), a.x2 + mid * (b.x2 - a.x2)};
    const double f = raw_det(field, x);
    if (std::abs(f) < best_abs) {
      best = x;
      best_abs = std::abs(f);
    }
    if (std::abs(f) <= target) return x;
    if ((f >= 0.0) == a_pos) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

}  // namespace

double Rect::diameter() const { return std::hypot(x1_max - x1_min, x2_max - x2_min); }

LinearSymbol2 ChartSymbolField::sample(Point2 x) const {
  if (!domain.contains(x)) {
    throw Error(ErrorKind::OutOfDomain, "chart point outside the field rectangle");
  }
  return sampler(x);
}

double det_field(const ChartSymbolField& field, Point2 x) { return field.sample(x).det(); }

double SingularCurve::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) len += distance(polyline[i - 1], polyline[i]);
  return len;
}

std::vector<SingularCurve> extract_singular_set(const ChartSymbolField& field,
                                                const ContourOptions& options) {
  if (field.resolution < 16) {
    throw Error(ErrorKind::InvalidArgument, "grid resolution must be >= 16 per axis");
  }
  if (!(options.tol_contour > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "contour tolerance must be positive");
  }
  const DetGrid grid = sample_grid(field);
  if (grid.max_abs <= std::numeric_limits<double>::min()) {
    throw Error(ErrorKind::DegenerateField, "det M vanishes on the whole grid");
  }
  const int n = grid.n;
  const double target = options.tol_contour * grid.max_abs;
  const Rect& dom = field.domain;
  auto node = [&](int i, int j) {
    return Point2{dom.x1_min + i * grid.h1, dom.x2_min + j * grid.h2};
  };
  auto positive = [&](int i, int j) { return grid.at(i, j) >= 0.0; };

  const long long horizontal = static_cast<long long>(n) * (n + 1);
  auto h_edge = [&](int i, int j) { return static_cast<long long>(j) * n + i; };
  auto v_edge = [&](int i, int j) { return horizontal + static_cast<long long>(j) * (n + 1) + i; };

  // Crossing vertices keyed by edge id.
  std::map<long long, Point2> vertex;
  auto crossing = [&](long long id, int i0, int j0, int i1, int j1) {
    auto it = vertex.find(id);
    if (it != vertex.end()) return;
    vertex.emplace(id, bisect_edge(field, node(i0, j0), grid.at(i0, j0), node(i1, j1),
                                   grid.at(i1, j1), target));
  };

  std::map<long long, std::vector<long long>> links;
  auto link = [&](long long a, long long b) {
    links[a].push_back(b);
    links[b].push_back(a);
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool c0 = positive(i, j);
      const bool c1 = positive(i + 1, j);
      const bool c2 = positive(i + 1, j + 1);
      const bool c3 = positive(i, j + 1);
      const long long e0 = h_edge(i, j);
      const long long e1 = v_edge(i + 1, j);
      const long long e2 = h_edge(i, j + 1);
      const long long e3 = v_edge(i, j);
      std::vector<long long> cut;
      if (c0 != c1) {
        crossing(e0, i, j, i + 1, j);
        cut.push_back(e0);
      }
      if (c1 != c2) {
        crossing(e1, i + 1, j, i + 1, j + 1);
        cut.push_back(e1);
      }
      if (c3 != c2) {
        crossing(e2, i, j + 1, i + 1, j + 1);
        cut.push_back(e2);
      }
      if (c0 != c3) {
        crossing(e3, i, j, i, j + 1);
        cut.push_back(e3);
      }
      if (cut.size() == 2) {
        link(cut[0], cut[1]);
      } else if (cut.size() == 4) {
        const Point2 centre{dom.x1_min + (i + 0.5) * grid.h1, dom.x2_min + (j + 0.5) * grid.h2};
        const bool centre_pos = raw_det(field, centre) >= 0.0;
        if (centre_pos == c0) {
          link(e0, e1);  // isolate c1
          link(e2, e3);  // isolate c3
        } else {
          link(e3, e0);  // isolate c0
          link(e1, e2);  // isolate c2
        }
      }
    }
  }

  std::vector<SingularCurve> curves;
  std::map<long long, char> used;
  auto walk = [&](long long start) {
    std::vector<long long> chain{start};
    used[start] = 1;
    long long prev = -1;
    long long cur = start;
    bool closed = false;
    while (true) {
      long long nxt = -1;
      for (long long cand : links[cur]) {
        if (cand == prev) continue;
        if (cand == start && chain.size() > 2) {
          closed = true;
          break;
        }
        if (!used.count(cand)) {
          nxt = cand;
          break;
        }
      }
      if (closed || nxt == -1) break;
      used[nxt] = 1;
      chain.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    SingularCurve curve;
    curve.closed = closed;
    const double eps = 1e-14 * dom.diameter();
    for (long long id : chain) {
      const Point2 x = vertex.at(id);
      if (!curve.polyline.empty() && distance(curve.polyline.back(), x) <= eps) continue;
      curve.polyline.push_back(x);
    }
    if (closed && curve.polyline.size() > 1 &&
        distance(curve.polyline.front(), curve.polyline.back()) <= eps) {
      curve.polyline.pop_back();
    }
    return curve;
  };

  // Open chains start at degree-one ends; the rest are cycles.
  for (const auto& [id, nbrs] : links) {
    if (nbrs.size() == 1 && !used.count(id)) curves.push_back(walk(id));
  }
  for (const auto& [id, nbrs] : links) {
    if (!used.count(id)) curves.push_back(walk(id));
  }

  std::vector<SingularCurve> result;
  const double min_length = 1e-12 * dom.diameter();
  for (SingularCurve& c : curves) {
    if (c.polyline.size() < 2) continue;
    if (c.closed) {
      if (c.polyline.size() < 3) continue;
      if (signed_area(c.polyline) < 0.0) std::reverse(c.polyline.begin(), c.polyline.end());
      auto first = std::min_element(c.polyline.begin(), c.polyline.end(), lex_less);
      std::rotate(c.polyline.begin(), first, c.polyline.end());
      c.polyline.push_back(c.polyline.front());
    } else if (lex_less(c.polyline.back(), c.polyline.front())) {
      std::reverse(c.polyline.begin(), c.polyline.end());
    }
    if (c.length() <= min_length) continue;
    c.residuals.reserve(c.polyline.size());
    for (const Point2& x : c.polyline) c.residuals.push_back(std::abs(raw_det(field, x)));
    result.push_back(std::move(c));
  }
  std::stable_sort(result.begin(), result.end(), [](const SingularCurve& a, const SingularCurve& b) {
    const double la = a.length();
    const double lb = b.length();
    if (la != lb) return la > lb;
    return lex_less(a.polyline.front(), b.polyline.front());
  });
  return result;
}

RegularValueReport regular_value_check(const ChartSymbolField& field, const SingularCurve& curve) {
  const DetGrid grid = sample_grid(field);
  const double diameter = field.domain.diameter();
  const double scale = grid.max_abs / diameter;
  const double step = 1e-6 * diameter;
  RegularValueReport report;
  report.threshold = 1e-6 * scale;
  report.min_grad = std::numeric_limits<double>::infinity();
  for (const Point2& x : curve.polyline) {
    const double d1 = (raw_det(field, {x.x1 + step, x.x2}) - raw_det(field, {x.x1 - step, x.x2}));
    const double d2 = (raw_det(field, {x.x1, x.x2 + step}) - raw_det(field, {x.x1, x.x2 - step}));
    report.min_grad = std::min(report.min_grad, std::hypot(d1, d2) / (2.0 * step));
  }
  if (curve.polyline.empty()) report.min_grad = 0.0;
  report.regular = report.min_grad > report.threshold;
  return report;
}

double kernel_angle(const LinearSymbol2& m) {
  const Sym2Value gram = Sym2Value::from_matrix(m.m11 * m.m11 + m.m21 * m.m21,
                                                m.m11 * m.m12 + m.m21 * m.m22,
                                                m.m12 * m.m12 + m.m22 * m.m22);
  // For rank one the traceless part carries half the trace; for rank zero
  // (or a conformal M) it vanishes.
  if (gram.t == 0.0 || gram.traceless_norm() <= 1e-8 * gram.t) {
    throw Error(ErrorKind::RankZero, "kernel of M(x) is two-dimensional");
  }
  return eigenline_angles(gram).lower;
}

double kernel_angle(const ChartSymbolField& field, Point2 x) {
  const LinearSymbol2 m = field.sample(x);
  const double norm2 = m.m11 * m.m11 + m.m12 * m.m12 + m.m21 * m.m21 + m.m22 * m.m22;
  if (std::abs(m.det()) > 1e-6 * norm2) {
    throw Error(ErrorKind::InvalidArgument, "point is not on the singular set");
  }
  return kernel_angle(m);
}

KnotDescriptor knot_type(int winding) {
  const bool odd = winding % 2 != 0;
  return {2, winding, odd, odd ? 1 : 2};
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::vector<double> lift_line_angles(std::span<const double> angles) {
  std::vector<double> lifted;
  lifted.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (i == 0) {
      lifted.push_back(angles[0]);
      continue;
    }
    const double d = std::remainder(angles[i] - angles[i - 1], kPi);
    if (std::abs(d) > 0.25 * kPi) {
      throw Error(ErrorKind::LiftFailure,
                  "kernel line jumps by " + std::to_string(d) + " rad; grid too coarse");
    }
    lifted.push_back(lifted.back() + d);
  }
  return lifted;
}

int winding_number(const MultiplicityComponent& component) {
  if (!component.base.closed) {
    throw Error(ErrorKind::InvalidArgument, "winding needs a closed base curve");
  }
  if (!component.regularity.regular) {
    throw Error(ErrorKind::InvalidArgument, "base curve is not transversal");
  }
  if (component.kernel_angles.size() < 2) {
    throw Error(ErrorKind::LiftFailure, "too few kernel samples");
  }
  const double turns = (component.kernel_angles.back() - component.kernel_angles.front()) / kPi;
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.1) {
    throw Error(ErrorKind::LiftFailure, "lifted kernel angle does not close up");
  }
  return static_cast<int>(rounded);
}

MultiplicityComponent make_component(const ChartSymbolField& field, SingularCurve curve) {
  MultiplicityComponent comp;
  comp.regularity = regular_value_check(field, curve);
  std::vector<double> angles;
  angles.reserve(curve.polyline.size());
  for (const Point2& x : curve.polyline) angles.push_back(kernel_angle(field.sampler(x)));
  comp.base = std::move(curve);
  comp.kernel_angles = lift_line_angles(angles);
  if (comp.base.closed && comp.regularity.regular) {
    comp.winding = winding_number(comp);
    comp.knot = knot_type(*comp.winding);
  }
  return comp;
}

namespace {

std::vector<std::vector<TorusPoint>> strands(const std::vector<double>& base,
                                             const std::vector<double>& fiber, int winding) {
  // base/fiber hold one traversal without the closing sample.
  const std::size_t count = base.size();
  const double shift = winding * kPi;
  std::vector<std::vector<TorusPoint>> out;
  if (winding % 2 != 0) {
    std::vector<TorusPoint> line;
    line.reserve(2 * count + 1);
    for (std::size_t i = 0; i < count; ++i) line.push_back({base[i], fiber[i]});
    for (std::size_t i = 0; i < count; ++i) line.push_back({base[i], fiber[i] + shift});
    line.push_back({base[0], fiber[0] + 2.0 * shift});
    out.push_back(std::move(line));
  } else {
    for (double offset : {0.0, kPi}) {
      std::vector<TorusPoint> line;
      line.reserve(count + 1);
      for (std::size_t i = 0; i < count; ++i) line.push_back({base[i], fiber[i] + offset});
      line.push_back({base[0], fiber[0] + offset + shift});
      out.push_back(std::move(line));
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<TorusPoint>> knot_polylines(const MultiplicityComponent& component) {
  if (!component.winding) {
    throw Error(ErrorKind::InvalidArgument, "component has no certified winding number");
  }
  const auto& poly = component.base.polyline;
  const double total = component.base.length();
  std::vector<double> base;
  std::vector<double> fiber;
  double run = 0.0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    if (i > 0) run += distance(poly[i - 1], poly[i]);
    base.push_back(2.0 * kPi * run / total);
    fiber.push_back(component.kernel_angles[i]);
  }
  return strands(base, fiber, *component.winding);
}

std::vector<std::vector<TorusPoint>> knot_polylines(int winding, int samples) {
  if (samples < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 samples");
  std::vector<double> base;
  std::vector<double> fiber;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    base.push_back(t);
    fiber.push_back(0.5 * winding * t + 0.5 * kPi);
  }
  return strands(base, fiber, winding);
}

Vec3 torus_embedding(const TorusPoint& pt, double major_radius, double minor_radius) {
  const double ring = major_radius + minor_radius * std::cos(pt.fiber_angle);
  return {ring * std::cos(pt.base_angle), ring * std::sin(pt.base_angle),
          minor_radius * std::sin(pt.fiber_angle)};
}

void write_polyline_csv(std::ostream& os, std::span<const MultiplicityComponent> components) {
  os << "curve_id,x1,x2,kernel_angle_lifted\n";
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    for (std::size_t i = 0; i < comp.base.polyline.size(); ++i) {
      os << c << ',' << format_double(comp.base.polyline[i].x1) << ','
         << format_double(comp.base.polyline[i].x2) << ','
         << format_double(comp.kernel_angles[i]) << '\n';
    }
  }
}

void transported_frame(const Vec3& x, const Vec3& t1_ref, Vec3& t1, Vec3& t2) {
  t1 = (t1_ref - t1_ref.dot(x) * x).normalized();
  t2 = x.cross(t1);
}

int signed_zero_count(const SurfaceMesh& mesh, std::span<const Vec3> normals,
                      const TangentSection& section) {
  if (normals.size() != mesh.vertices.size()) {
    throw Error(ErrorKind::InvalidArgument, "one normal per vertex required");
  }
  int total = 0;
  for (const Face& tri : mesh.faces) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const Vec3 t_ref = (b - a).normalized();
    double angle[3];
    Vec3 avg_normal = Vec3::Zero();
    for (int k = 0; k < 3; ++k) {
      const Vec3& x = mesh.vertices[tri[k]];
      const Vec3 n = normals[tri[k]].normalized();
      avg_normal += n;
      Vec3 t1;
      Vec3 t2;
      transported_frame(n, t_ref, t1, t2);
      const Sym2Value s = section(x, t1, t2);
      if (s.p == 0.0 && s.q == 0.0) {
        throw Error(ErrorKind::ZeroOnVertex, "section vanishes at vertex " + std::to_string(tri[k]));
      }
      angle[k] = std::atan2(s.q, s.p);
    }
    const double sweep = wrap_angle(angle[1] - angle[0]) + wrap_angle(angle[2] - angle[1]) +
                         wrap_angle(angle[0] - angle[2]);
    int degree = static_cast<int>(std::lround(sweep / (2.0 * kPi)));
    if ((b - a).cross(c - a).dot(avg_normal) < 0.0) degree = -degree;
    total += degree;
  }
  return total;
}

int local_degree_on_sphere(const TangentSection& section, const Vec3& x, double radius,
                           int samples) {
  const Vec3 axis = std::abs(x.z()) > 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  const Vec3 t1 = axis.cross(x).normalized();
  const Vec3 t2 = x.cross(t1);
  double sweep = 0.0;
  double prev = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double th = 2.0 * kPi * (k % samples) / samples;
    const Vec3 y = (std::cos(radius) * x +
                    std::sin(radius) * (std::cos(th) * t1 + std::sin(th) * t2))
                       .normalized();
    Vec3 u1;
    Vec3 u2;
    transported_frame(y, t1, u1, u2);
    const Sym2Value s = section(y, u1, u2);
    const double a = std::atan2(s.q, s.p);
    if (k > 0) sweep += wrap_angle(a - prev);
    prev = a;
  }
  return static_cast<int>(std::lround(sweep / (2.0 * kPi)));
}

}  // namespace wavesym
