#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "wavesym/mesh.hpp"
#include "wavesym/multiplicity.hpp"
#include "wavesym/sym2.hpp"

namespace wavesym {

/// Dielectric tensor diag(eps1, eps2, eps3) in its principal frame.
struct Crystal {
  double eps1 = 1.0;
  double eps2 = 1.0;
  double eps3 = 1.0;

  /// Throws InvalidArgument unless all entries are positive and finite.
  static Crystal make(double e1, double e2, double e3);

  Vec3 eps() const { return {eps1, eps2, eps3}; }
  Vec3 inverse_eps() const { return {1.0 / eps1, 1.0 / eps2, 1.0 / eps3}; }
  bool biaxial() const;
};

/// sigma(xi)(E, B) = (xi x B, -xi x (eps^-1 E)).
std::pair<Vec3, Vec3> maxwell_apply(const Crystal& crystal, const Vec3& xi, const Vec3& e,
                                    const Vec3& b);

/// Orthonormal tangent frame at unit x: t1 = normalize(a x x) with a = e3,
/// or a = e1 when |x3| > 0.9, and t2 = x cross t1.
void tangent_frame(const Vec3& x, Vec3& t1, Vec3& t2);

/// [<eps^-1 ti, tj>] in the given tangent frame.
Sym2Value compress(const Eigen::Matrix3d& op, const Vec3& t1, const Vec3& t2);
Sym2Value compressed_operator(const Crystal& crystal, const Vec3& x);

/// The crystal as a section x -> eps^-1 of ambient symmetric operators.
Eigen::Matrix3d inverse_eps_matrix(const Crystal& crystal);

/// Traceless part of the compression in an arbitrary frame; used for
/// degree and zero counting.
TangentSection crystal_tangent_section(const Crystal& crystal);

struct FresnelSample {
  Vec3 xi = Vec3::UnitZ();
  double lam1 = 0.0;
  double lam2 = 0.0;
  Vec3 inner = Vec3::Zero();  // sqrt(lam1) xi
  Vec3 outer = Vec3::Zero();  // sqrt(lam2) xi
};

FresnelSample fresnel_sample(const Crystal& crystal, const Vec3& xi);

struct SingularDirection {
  Vec3 x = Vec3::UnitZ();
  double residual = 0.0;  // |s0(x)|
  int local_index = 0;
};

struct SingularSearchOptions {
  int seed_subdivisions = 4;
  double tol = 1e-10;
  int max_iterations = 200;
  double dedupe_angle = 1e-3;
};

/// The four directions where the compressed operator is a multiple of the
/// identity. Ordered by descending x3, then descending x1, then descending x2.
/// Throws NotBiaxial for repeated dielectric eigenvalues.
std::vector<SingularDirection> singular_directions(const Crystal& crystal,
                                                   const SingularSearchOptions& options = {});

struct FresnelMesh {
  SurfaceMesh inner;  // sqrt(lam1) sheet
  SurfaceMesh outer;  // sqrt(lam2) sheet
  std::vector<double> gap;  // sqrt(lam2) - sqrt(lam1) per direction
};

/// Both sheets over a shared icosphere direction set. Throws InvalidArgument
/// for subdivisions < 2.
FresnelMesh fresnel_mesh(const Crystal& crystal, int subdivisions);

}  // namespace wavesym
