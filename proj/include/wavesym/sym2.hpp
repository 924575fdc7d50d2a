#pragma once

#include <complex>

namespace wavesym {

using Complex = std::complex<double>;

/// Symmetric 2x2 operator written as trace plus traceless part:
///   [[t/2 + p, q], [q, t/2 - p]]
struct Sym2Value {
  double t = 0.0;
  double p = 0.0;
  double q = 0.0;

  /// From the matrix [[a, b], [b, c]].
  static Sym2Value from_matrix(double a, double b, double c) {
    return {a + c, 0.5 * (a - c), b};
  }

  double a11() const { return 0.5 * t + p; }
  double a12() const { return q; }
  double a22() const { return 0.5 * t - p; }

  /// Norm of the traceless part under (A,B) = tr(AB)/2.
  double traceless_norm() const;
  Sym2Value traceless() const { return {0.0, p, q}; }
  double half_trace() const { return 0.5 * t; }
};

/// (A,B) = tr(AB)/2.
double metric(const Sym2Value& a, const Sym2Value& b);

struct Eigenvalues {
  double lower = 0.0;  // lambda_1
  double upper = 0.0;  // lambda_2
  bool multiple = false;
};

Eigenvalues eigenvalues(const Sym2Value& s);

/// Line angles in [0, pi) of the eigenvectors for lambda_1 and lambda_2.
struct EigenlineAngles {
  double lower = 0.0;
  double upper = 0.0;
};

/// Throws Error(MultiplePoint) when p = q = 0.
EigenlineAngles eigenline_angles(const Sym2Value& s);

/// R S R^T with R the rotation by theta.
Sym2Value rotate_conjugate(const Sym2Value& s, double theta);

/// Reduce an angle to [0, pi).
double normalize_line_angle(double angle);

/// Linear map from a covector xi = (xi1, xi2) to the traceless part (p, q):
///   (p, q)^T = [[m11, m12], [m21, m22]] (xi1, xi2)^T
/// Rows are (a1, b1) and (a2, b2) in the usual local-trivialization notation.
struct LinearSymbol2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  Sym2Value apply(double xi1, double xi2) const {
    return {0.0, m11 * xi1 + m12 * xi2, m21 * xi1 + m22 * xi2};
  }
  double det() const { return m11 * m22 - m12 * m21; }
  double frobenius_norm() const;
};

/// Frame-rotation action on a linear symbol: values conjugated by R_theta and
/// covectors rotated by R_theta, i.e. M -> R_{2 theta} M R_{-theta}.
LinearSymbol2 rotate_symbol(const LinearSymbol2& m, double theta);

/// Complex coordinates of a linear symbol in the basis g1..g4:
/// u = a + ib (the F part), w = c + id (the F (x) F (x) F part).
struct ComplexRep {
  Complex u{};
  Complex w{};
};

/// p + iq = (u + w)/sqrt(2) for the xi1 column and
/// r + is = i (u - w)/sqrt(2) for the xi2 column.
LinearSymbol2 rep_to_matrix(const ComplexRep& r);
ComplexRep matrix_to_rep(const LinearSymbol2& m);

/// (e^{i theta} u, e^{3 i theta} w).
ComplexRep rotate_rep(const ComplexRep& r, double theta);

struct Invertibility {
  bool invertible = false;
  /// |u|^2 - |w|^2. The coefficient-matrix determinant equals half of this.
  double margin = 0.0;
};

Invertibility is_invertible(const ComplexRep& r);

}  // namespace wavesym
