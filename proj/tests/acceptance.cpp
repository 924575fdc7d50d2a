// Acceptance run: one PASS/FAIL line per criterion, tolerances and time
// budgets pinned below. Exit status is nonzero if any criterion fails.
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "golden_cases.hpp"
#include "oracles.hpp"
#include "wavesym/eigenline.hpp"
#include "wavesym/error.hpp"
#include "wavesym/fresnel.hpp"
#include "wavesym/sphere_symbols.hpp"
#include "wavesym/sym2.hpp"

using namespace wavesym;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

constexpr double kEigTol = 1e-12;
constexpr double kRotTol = 1e-12;
constexpr double kAlphaResidual = 1e-12;
constexpr double kDhTol = 1e-6;
constexpr double kSingularResidual = 1e-10;
constexpr double kMiddleAxis = 1e-8;
constexpr double kRootTol = 1e-9;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0.0 || secs < budget_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d %-28s %7.3fs", pass ? "PASS" : "FAIL", id, name, secs);
  if (budget_s > 0.0) std::printf(" (budget %gs)", budget_s);
  if (!in_time) std::printf(" over time budget");
  if (!o.detail.empty()) std::printf("  %s", o.detail.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

Outcome eigenvalue_formulas() {
  auto g = oracle::rng(1);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double a = d(g);
    const double b = d(g);
    const double c = d(g);
    const Eigenvalues e = eigenvalues(Sym2Value::from_matrix(a, b, c));
    const auto [l1, l2] = oracle::quadratic_eigenvalues(a, b, c);
    worst = std::max({worst, rel_err(e.lower, l1), rel_err(e.upper, l2)});
  }
  return {worst <= kEigTol, fmt("max rel err %.2e", worst)};
}

Outcome rotation_equivariance() {
  auto g = oracle::rng(2);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Sym2Value s{d(g), d(g), d(g)};
    const ComplexRep r{{d(g), d(g)}, {d(g), d(g)}};
    for (int i = 0; i < 360; ++i) {
      const double th = 2.0 * pi * i / 360.0;
      // Traceless part rotates by 2 theta: R S R^T computed by matrices.
      Eigen::Matrix2d rot;
      rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
      Eigen::Matrix2d m;
      m << s.a11(), s.a12(), s.a12(), s.a22();
      const Eigen::Matrix2d want = rot * m * rot.transpose();
      const Sym2Value got = rotate_conjugate(s, th);
      const double pe = s.p * std::cos(2 * th) - s.q * std::sin(2 * th);
      const double qe = s.p * std::sin(2 * th) + s.q * std::cos(2 * th);
      worst = std::max({worst, std::abs(got.a11() - want(0, 0)), std::abs(got.a12() - want(0, 1)),
                        std::abs(got.a22() - want(1, 1)), std::abs(got.p - pe),
                        std::abs(got.q - qe), std::abs(got.t - s.t)});
      // Complex rep: the matrix action M -> R_{2 theta} M R_{-theta} must
      // correspond to (e^{i theta} u, e^{3 i theta} w).
      const LinearSymbol2 lin = rep_to_matrix(r);
      Eigen::Matrix2d mm;
      mm << lin.m11, lin.m12, lin.m21, lin.m22;
      Eigen::Matrix2d r2;
      r2 << std::cos(2 * th), -std::sin(2 * th), std::sin(2 * th), std::cos(2 * th);
      const Eigen::Matrix2d acted = r2 * mm * rot.transpose();
      const ComplexRep rr = rotate_rep(r, th);
      const LinearSymbol2 back = rep_to_matrix(rr);
      worst = std::max({worst, std::abs(back.m11 - acted(0, 0)), std::abs(back.m12 - acted(0, 1)),
                        std::abs(back.m21 - acted(1, 0)), std::abs(back.m22 - acted(1, 1))});
      const Complex eu = std::polar(1.0, th) * r.u;
      const Complex ew = std::polar(1.0, 3 * th) * r.w;
      worst = std::max({worst, std::abs(rr.u - eu), std::abs(rr.w - ew)});
    }
  }
  return {worst <= kRotTol, fmt("max err %.2e", worst)};
}

Outcome z_sets() {
  const double alpha = alpha_root();
  const double residual = std::abs(alpha * alpha * alpha + alpha * alpha + 3 * alpha - 1);
  bool ok = residual <= kAlphaResidual;
  auto radii_eq = [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > 1e-14 * std::max(1.0, b[i])) return false;
    return true;
  };
  ok = ok && radii_eq(z_set(0, 1).radii, {alpha, 1.0});
  ok = ok && radii_eq(z_set(0, 3).radii, {1.0, 1.0 / alpha});
  for (int n = 0; n <= 6; ++n)
    if (n != 1 && n != 3) ok = ok && radii_eq(z_set(0, n).radii, {1.0});
  for (int m = 0; m <= 2; ++m) ok = ok && radii_eq(z_set(m, 0).radii, {1.0});
  int shifted = 0;
  for (int m = 1; m <= 2; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const ZSet z = z_set(m, n);
      const ZSet base = n <= m ? z_set(m - n, 0) : z_set(0, n - m);
      ok = ok && z.includes_zero && radii_eq(z.radii, base.radii);
      // Every radius solves r^m = lambda(r)^2 r^n.
      for (double r : z.radii) {
        const double l = 2.0 / (1.0 + r * r);
        ok = ok && std::abs(std::pow(r, m) - l * l * std::pow(r, n)) < 1e-12 * std::max(1.0, std::pow(r, n));
      }
      ++shifted;
    }
  }
  return {ok, fmt("alpha residual %.2e", residual) + ", shift pairs " + std::to_string(shifted)};
}

Outcome transversality() {
  double worst = 0.0;
  bool flags = true;
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 6; ++n) {
      const Transversality t = transversality_h(m, n);
      // Central difference of h computed here, independent of the library's.
      const double h = 1e-6;
      const double numeric = (h_function(m, n, 1 + h) - h_function(m, n, 1 - h)) / (2 * h);
      worst = std::max({worst, std::abs(numeric - 2.0 * (2 + m - n)),
                        std::abs(t.dh_dr_numeric - 2.0 * (2 + m - n))});
      flags = flags && (t.transversal == (n - m != 2));
    }
  }
  return {flags && worst <= kDhTol, fmt("max |dh/dr - 2(2+m-n)| %.2e", worst)};
}

Outcome winding() {
  int checked = 0;
  std::string bad;
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 6; ++n) {
      const MnReport rep = analyze_mn(m, n);
      if (n - m == 2) {
        for (const CircleReport& c : rep.circles)
          if (c.winding) bad += " (" + std::to_string(m) + "," + std::to_string(n) + ") reports winding";
        continue;
      }
      bool found = false;
      for (const CircleReport& c : rep.circles) {
        if (std::abs(c.r - 1.0) > 1e-6) continue;
        found = true;
        const bool connected_expected = (n - m) % 2 != 0;
        if (!c.winding || *c.winding != n - m || !c.knot ||
            c.knot->connected != connected_expected) {
          bad += " (" + std::to_string(m) + "," + std::to_string(n) + ")";
        }
      }
      if (!found) bad += " (" + std::to_string(m) + "," + std::to_string(n) + ") no unit circle";
      ++checked;
    }
  }
  return {bad.empty(), std::to_string(checked) + " pairs at grid 512" + bad};
}

Outcome fresnel_singularities() {
  const Crystal c = Crystal::make(2.0, 2.5, 3.0);
  const auto dirs = singular_directions(c);
  bool ok = dirs.size() == 4;
  double worst_res = 0.0;
  double worst_mid = 0.0;
  int sum = 0;
  for (const SingularDirection& d : dirs) {
    // Residual recomputed from the projected 3x3 eigenvalues.
    const auto [l1, l2] = oracle::projected_eigenvalues(c.inverse_eps(), d.x);
    worst_res = std::max({worst_res, d.residual, std::abs(l2 - l1) / 2});
    worst_mid = std::max(worst_mid, std::abs(d.x.y()));
    sum += d.local_index;
    bool paired = false;
    for (const SingularDirection& e : dirs) paired = paired || (e.x + d.x).norm() < 1e-8;
    ok = ok && paired;
  }
  ok = ok && worst_res <= kSingularResidual && worst_mid <= kMiddleAxis && sum == 4;
  return {ok, std::to_string(dirs.size()) + " directions, " + fmt("residual %.2e", worst_res) +
                  fmt(", middle %.2e", worst_mid) + ", index sum " + std::to_string(sum)};
}

Outcome fresnel_oracle() {
  const Crystal c = Crystal::make(2.0, 2.5, 3.0);
  auto g = oracle::rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 xi = oracle::random_unit(g);
    const FresnelSample s = fresnel_sample(c, xi);
    const Eigen::Matrix<double, 6, 6> a = oracle::maxwell_matrix(c.inverse_eps(), xi);
    const Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(a);
    for (double lam : {s.lam1, s.lam2}) {
      for (double tau : {std::sqrt(lam), -std::sqrt(lam)}) {
        // tau is a root of det(tau I + A) iff -tau is an eigenvalue of A.
        double best = 1e300;
        for (int k = 0; k < 6; ++k) best = std::min(best, std::abs(es.eigenvalues()[k] + tau));
        worst = std::max(worst, best);
      }
    }
  }
  return {worst <= kRootTol, fmt("max root distance %.2e", worst)};
}

Outcome genus_stability() {
  const Crystal c = Crystal::make(2.0, 2.5, 3.0);
  std::vector<Vec3> pts;
  for (const SingularDirection& d : singular_directions(c)) pts.push_back(d.x);
  std::string detail;
  bool ok = true;
  for (int sub : {4, 5}) {
    for (double rho : {0.05, 0.1, 0.2}) {
      EigenlineOptions opt;
      opt.subdivisions = sub;
      opt.tube_radius = rho;
      const EigenlineManifold m = build_eigenline_manifold(crystal_section(c), pts, opt);
      const auto gen = m.genus_if_connected();
      ok = ok && m.chi() == -4 && gen && *gen == 3;
      detail += " " + std::to_string(m.chi());
    }
  }
  return {ok, "chi over 6 runs:" + detail};
}

Outcome degenerate() {
  bool not_biaxial = false;
  try {
    singular_directions(Crystal::make(2.0, 2.0, 3.0));
  } catch (const Error& e) {
    not_biaxial = e.kind() == ErrorKind::NotBiaxial;
  }
  const Transversality t = transversality_h(0, 2);
  const ZSet z = z_set(0, 2);
  bool no_winding = !t.transversal;
  // The circle report carries no winding; checked via the coarse analysis.
  const MnReport rep = analyze_mn(0, 2, {64, 1e-10, 1e-15});
  for (const CircleReport& cr : rep.circles) no_winding = no_winding && !cr.winding && !cr.transversal;
  return {not_biaxial && no_winding && !rep.circles.empty() && !z.radii.empty(),
          std::string("NotBiaxial ") + (not_biaxial ? "raised" : "missing")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "wavesym_acceptance";
  fs::remove_all(root);
  int files = 0;
  std::string bad;
  for (int run = 0; run < 3; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::create_directories(dir);
    for (const GoldenCase& c : golden_cases()) {
      std::string cmd = std::string("\"") + WAVESYM_CLI + "\"";
      for (const std::string& a : golden_args(c, dir.string())) cmd += " \"" + a + "\"";
      if (std::system(cmd.c_str()) != 0) bad += " " + c.name + "(exit)";
    }
  }
  for (const GoldenCase& c : golden_cases()) {
    for (const std::string& f : golden_files(c)) {
      const std::string golden = slurp(fs::path(WAVESYM_GOLDEN_DIR) / f);
      bool same = !golden.empty();
      for (int run = 0; run < 3; ++run)
        same = same && slurp(root / ("run" + std::to_string(run)) / f) == golden;
      if (!same) bad += " " + f;
      ++files;
    }
  }
  return {bad.empty(), std::to_string(files) + " files x 3 runs" + bad};
}

}  // namespace

int main() {
  report(1, "eigenvalue formulas", 1.0, eigenvalue_formulas);
  report(2, "rotation equivariance", 1.0, rotation_equivariance);
  report(3, "z-sets", 1.0, z_sets);
  report(4, "transversality", 1.0, transversality);
  report(5, "winding", 30.0, winding);
  report(6, "fresnel singularities", 10.0, fresnel_singularities);
  report(7, "fresnel 6x6 oracle", 10.0, fresnel_oracle);
  report(8, "genus", 30.0, genus_stability);
  report(9, "degenerate control", 1.0, degenerate);
  report(10, "determinism", 0.0, determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
