#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "wavesym/error.hpp"
#include "wavesym/fresnel.hpp"
#include "wavesym/multiplicity.hpp"
#include "wavesym/sphere_symbols.hpp"

using namespace wavesym;
using std::numbers::pi;

namespace {

ChartSymbolField constant_field(LinearSymbol2 m) {
  ChartSymbolField f;
  f.sampler = [m](Point2) { return m; };
  return f;
}

ChartSymbolField mn_field(int m, int n, int resolution, double half = 2.0) {
  return symbol_field(SphereSymbol::monomial(m, n), {-half, half, -half, half}, resolution);
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

double max_radius_error(const SingularCurve& c, double r) {
  double err = 0.0;
  for (const Point2& x : c.polyline) err = std::max(err, std::abs(std::hypot(x.x1, x.x2) - r));
  return err;
}

}  // namespace

TEST_SUITE("multiplicity") {

TEST_CASE("det_field") {
  CHECK(det_field(constant_field({1, 0, 0, 1}), {0.3, 0.2}) == 1.0);
  CHECK(det_field(constant_field({2, 3, 2, 3}), {0.3, 0.2}) == 0.0);
  const ChartSymbolField f = mn_field(0, 6, 64);
  CHECK(std::abs(det_field(f, {1.0, 0.0})) < 1e-14);
  CHECK(std::abs(det_field(f, {std::cos(0.4), std::sin(0.4)})) < 1e-14);
  // h(0.5)/2, from the radius function.
  CHECK(det_field(f, {0.5, 0.0}) == doctest::Approx(0.5 * h_function(0, 6, 0.5)).epsilon(1e-12));
  CHECK(kind_of([&] { det_field(f, {3.0, 0.0}); }) == ErrorKind::OutOfDomain);
}

TEST_CASE("extract_singular_set on the sigma family") {
  auto curves = extract_singular_set(mn_field(0, 6, 256));
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].closed);
  CHECK(curves[0].polyline.front().x1 == curves[0].polyline.back().x1);
  CHECK(curves[0].polyline.front().x2 == curves[0].polyline.back().x2);
  CHECK(max_radius_error(curves[0], 1.0) < 1e-3);

  const double alpha = alpha_root();
  curves = extract_singular_set(mn_field(0, 1, 256));
  REQUIRE(curves.size() == 2);
  // Descending length: the unit circle first.
  CHECK(max_radius_error(curves[0], 1.0) < 1e-3);
  CHECK(max_radius_error(curves[1], alpha) < 1e-3);

  // Residual bound and counter-clockwise orientation.
  for (const SingularCurve& c : curves) {
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < c.polyline.size(); ++i) {
      area += c.polyline[i].x1 * c.polyline[i + 1].x2 - c.polyline[i + 1].x1 * c.polyline[i].x2;
    }
    CHECK(area > 0.0);
    double fmax = 0.0;
    const ChartSymbolField f = mn_field(0, 1, 256);
    for (int i = 0; i <= 256; ++i) {
      for (int j = 0; j <= 256; ++j) {
        fmax = std::max(fmax, std::abs(det_field(f, {-2.0 + 4.0 * i / 256, -2.0 + 4.0 * j / 256})));
      }
    }
    for (double r : c.residuals) CHECK(r <= 1e-10 * fmax);
  }

  ChartSymbolField positive;
  positive.sampler = [](Point2 x) {
    return LinearSymbol2{x.x1 * x.x1 + x.x2 * x.x2 + 1.0, 0.0, 0.0, 1.0};
  };
  CHECK(extract_singular_set(positive).empty());
  CHECK(kind_of([] { extract_singular_set(constant_field({0, 0, 0, 0})); }) ==
        ErrorKind::DegenerateField);
  ChartSymbolField coarse = mn_field(0, 6, 8);
  CHECK(kind_of([&] { extract_singular_set(coarse); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("contour vertices converge quadratically") {
  // Vertices are bisected to the zero set, so the polyline vertices sit on
  // the circle up to the residual; the chord error between vertices shrinks
  // by ~4 per grid doubling.
  auto chord_error = [](int res) {
    const auto c = extract_singular_set(mn_field(0, 6, res))[0];
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < c.polyline.size(); ++i) {
      const Point2 a = c.polyline[i];
      const Point2 b = c.polyline[i + 1];
      err = std::max(err, 1.0 - std::hypot(0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2)));
    }
    return err;
  };
  const double e1 = chord_error(64);
  const double e2 = chord_error(128);
  const double e3 = chord_error(256);
  CHECK(e1 / e2 > 2.5);
  CHECK(e2 / e3 > 2.5);
  CHECK(max_radius_error(extract_singular_set(mn_field(0, 6, 64))[0], 1.0) < 1e-9);
}

TEST_CASE("regular_value_check") {
  auto c = extract_singular_set(mn_field(0, 6, 128))[0];
  CHECK(regular_value_check(mn_field(0, 6, 128), c).regular);

  SingularCurve circle;
  circle.closed = true;
  for (int k = 0; k <= 360; ++k) {
    circle.polyline.push_back({std::cos(2 * pi * (k % 360) / 360), std::sin(2 * pi * (k % 360) / 360)});
  }
  const auto rep = regular_value_check(mn_field(0, 2, 128), circle);
  CHECK_FALSE(rep.regular);
  CHECK(rep.min_grad < rep.threshold);

  ChartSymbolField line;
  line.sampler = [](Point2 x) { return LinearSymbol2{x.x1, 0.0, 0.0, 1.0}; };
  line.resolution = 32;
  const auto lines = extract_singular_set(line);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(lines[0].closed);
  const auto lr = regular_value_check(line, lines[0]);
  CHECK(lr.regular);
  CHECK(lr.min_grad == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kernel_angle") {
  CHECK(kernel_angle(LinearSymbol2{1, 0, 0, 0}) == doctest::Approx(pi / 2));
  CHECK(std::abs(kernel_angle(LinearSymbol2{0, 1, 0, 0})) < 1e-15);
  CHECK(kind_of([] { kernel_angle(LinearSymbol2{0, 0, 0, 0}); }) == ErrorKind::RankZero);

  auto g = oracle::rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    // Rank-one matrices a b^T.
    const double a1 = u(g), a2 = u(g), b1 = u(g), b2 = u(g);
    const LinearSymbol2 m{a1 * b1, a1 * b2, a2 * b1, a2 * b2};
    const double th = kernel_angle(m);
    const double r1 = m.m11 * std::cos(th) + m.m12 * std::sin(th);
    const double r2 = m.m21 * std::cos(th) + m.m22 * std::sin(th);
    CHECK(std::hypot(r1, r2) <= 1e-8 * m.frobenius_norm());
  }

  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 6; ++n) {
      if (n - m == 2) continue;
      const ChartSymbolField f = mn_field(m, n, 64);
      for (int k = 0; k < 24; ++k) {
        const double th = 2 * pi * k / 24;
        const double got = kernel_angle(f.sample({std::cos(th), std::sin(th)}));
        const double want = predicted_kernel_angle(m, n, th);
        CHECK(std::abs(std::remainder(got - want, pi)) < 1e-9);
      }
    }
  }
}

TEST_CASE("winding numbers") {
  auto comp = [](int m, int n, int res) {
    auto curves = extract_singular_set(mn_field(m, n, res));
    for (auto& c : curves) {
      if (std::abs(std::hypot(c.polyline[0].x1, c.polyline[0].x2) - 1.0) < 1e-3) {
        return make_component(mn_field(m, n, res), c);
      }
    }
    FAIL("no unit circle");
    return MultiplicityComponent{};
  };
  CHECK(*comp(0, 6, 256).winding == 6);
  CHECK(*comp(1, 4, 256).winding == 3);
  CHECK(comp(1, 4, 256).connected());
  CHECK_FALSE(comp(0, 6, 256).connected());
  // Refinement invariance.
  for (int res : {64, 128, 512}) CHECK(*comp(2, 5, res).winding == 3);

  // Reversing the traversal negates the count.
  MultiplicityComponent c = comp(0, 5, 128);
  std::reverse(c.base.polyline.begin(), c.base.polyline.end());
  const MultiplicityComponent rev = make_component(mn_field(0, 5, 128), c.base);
  CHECK(*rev.winding == -5);

  ChartSymbolField constant_kernel;
  constant_kernel.sampler = [](Point2 x) {
    return LinearSymbol2{1.0, 0.0, 0.0, x.x1 * x.x1 + x.x2 * x.x2 - 1.0};
  };
  constant_kernel.domain = {-2, 2, -2, 2};
  constant_kernel.resolution = 64;
  auto cc = extract_singular_set(constant_kernel);
  REQUIRE(cc.size() == 1);
  CHECK(*make_component(constant_kernel, cc[0]).winding == 0);

  // Non-regular base curves are rejected.
  SingularCurve circle;
  circle.closed = true;
  for (int k = 0; k <= 90; ++k) circle.polyline.push_back({std::cos(2 * pi * (k % 90) / 90), std::sin(2 * pi * (k % 90) / 90)});
  MultiplicityComponent bad = make_component(mn_field(0, 2, 64), circle);
  CHECK_FALSE(bad.winding.has_value());
  CHECK(kind_of([&] { winding_number(bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("lift_line_angles") {
  const std::vector<double> smooth{0.1, 0.5, 0.9, 1.3, 1.7, 2.1, 2.5, 2.9, 0.15};
  const auto lifted = lift_line_angles(smooth);
  CHECK(lifted.back() == doctest::Approx(0.15 + pi));
  const std::vector<double> jumpy{0.0, 1.2};
  CHECK(kind_of([&] { lift_line_angles(jumpy); }) == ErrorKind::LiftFailure);
}

TEST_CASE("knot types and polylines") {
  KnotDescriptor k = knot_type(3);
  CHECK(k.p == 2);
  CHECK(k.q == 3);
  CHECK(k.connected);
  CHECK(k.components == 1);
  k = knot_type(2);
  CHECK_FALSE(k.connected);
  CHECK(k.components == 2);
  k = knot_type(0);
  CHECK(k.components == 2);
  CHECK(knot_type(-3).connected);

  for (int m : {0, 1, 2, 3, 6}) {
    const auto strands = knot_polylines(m, 100);
    CHECK(static_cast<int>(strands.size()) == knot_type(m).components);
    for (const auto& s : strands) {
      // Closed in the solid torus: fiber angle returns mod 2 pi.
      const double df = s.back().fiber_angle - s.front().fiber_angle;
      CHECK(std::abs(std::remainder(df, 2 * pi)) < 1e-9);
    }
  }
  const Vec3 e = torus_embedding({0.0, 0.0});
  CHECK(e.x() == doctest::Approx(3.0));
}

TEST_CASE("polyline csv") {
  auto curves = extract_singular_set(mn_field(0, 3, 64));
  std::vector<MultiplicityComponent> comps;
  for (auto& c : curves) comps.push_back(make_component(mn_field(0, 3, 64), c));
  std::ostringstream os;
  write_polyline_csv(os, comps);
  const std::string text = os.str();
  CHECK(text.rfind("curve_id,x1,x2,kernel_angle_lifted\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : text) rows += ch == '\n';
  std::size_t expect = 1;
  for (auto& c : comps) expect += c.base.polyline.size();
  CHECK(rows == expect);
}

TEST_CASE("signed zero count") {
  const Crystal crystal{2.0, 2.5, 3.0};
  for (int s : {3, 4, 5}) {
    const SurfaceMesh ico = icosphere(s);
    CHECK(signed_zero_count(ico, ico.vertices, crystal_tangent_section(crystal)) == 4);
  }

  // (p, q) = (x1, x2) around the origin of a planar fan.
  SurfaceMesh fan;
  fan.vertices.push_back(Vec3(0.01, 0.013, 0));
  for (int k = 0; k < 8; ++k) fan.vertices.push_back(Vec3(std::cos(k * pi / 4), std::sin(k * pi / 4), 0));
  for (int k = 0; k < 8; ++k) fan.faces.push_back({0, 1 + k, 1 + (k + 1) % 8});
  fan.vertices[0] = Vec3(0.3, 0.2, 0);  // keep the zero inside a face, off the vertices
  std::vector<Vec3> up(fan.vertices.size(), Vec3::UnitZ());
  const TangentSection identity = [](const Vec3& x, const Vec3& t1, const Vec3& t2) {
    return Sym2Value{0.0, x.dot(t1), x.dot(t2)};
  };
  CHECK(signed_zero_count(fan, up, identity) == 1);

  const TangentSection constant = [](const Vec3&, const Vec3&, const Vec3&) {
    return Sym2Value{0.0, 1.0, 0.0};
  };
  CHECK(signed_zero_count(fan, up, constant) == 0);

  fan.vertices[0] = Vec3::Zero();
  CHECK(kind_of([&] { signed_zero_count(fan, up, identity); }) == ErrorKind::ZeroOnVertex);
}

}  // TEST_SUITE
