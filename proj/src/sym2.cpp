#include "wavesym/sym2.hpp"

#include <cmath>
#include <numbers>

#include "wavesym/error.hpp"

namespace wavesym {

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

double Sym2Value::traceless_norm() const { return std::hypot(p, q); }

double metric(const Sym2Value& a, const Sym2Value& b) {
  return a.p * b.p + a.q * b.q + 0.25 * a.t * b.t;
}

Eigenvalues eigenvalues(const Sym2Value& s) {
  const double half = 0.5 * s.t;
  const double r = s.traceless_norm();
  return {half - r, half + r, r == 0.0};
}

double normalize_line_angle(double angle) {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  // fmod can return pi itself after the shift for tiny negative inputs
  if (a >= kPi) a -= kPi;
  return a;
}

EigenlineAngles eigenline_angles(const Sym2Value& s) {
  if (s.p == 0.0 && s.q == 0.0) {
    throw Error(ErrorKind::MultiplePoint, "every line is an eigenline");
  }
  // The +||s0|| eigenvector of [[p,q],[q,-p]] sits at half the angle of (p,q).
  const double upper = normalize_line_angle(0.5 * std::atan2(s.q, s.p));
  return {normalize_line_angle(upper + 0.5 * kPi), upper};
}

Sym2Value rotate_conjugate(const Sym2Value& s, double theta) {
  const double c = std::cos(2.0 * theta);
  const double sn = std::sin(2.0 * theta);
  return {s.t, c * s.p - sn * s.q, sn * s.p + c * s.q};
}

double LinearSymbol2::frobenius_norm() const {
  return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22);
}

LinearSymbol2 rotate_symbol(const LinearSymbol2& m, double theta) {
  const double c2 = std::cos(2.0 * theta);
  const double s2 = std::sin(2.0 * theta);
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  // A = R_{2 theta} M
  const double a11 = c2 * m.m11 - s2 * m.m21;
  const double a12 = c2 * m.m12 - s2 * m.m22;
  const double a21 = s2 * m.m11 + c2 * m.m21;
  const double a22 = s2 * m.m12 + c2 * m.m22;
  // A R_{-theta}, R_{-theta} = [[c, s], [-s, c]]
  return {a11 * c1 - a12 * s1, a11 * s1 + a12 * c1, a21 * c1 - a22 * s1,
          a21 * s1 + a22 * c1};
}

LinearSymbol2 rep_to_matrix(const ComplexRep& r) {
  const Complex pq = kInvSqrt2 * (r.u + r.w);
  const Complex rs = Complex(0.0, kInvSqrt2) * (r.u - r.w);
  return {pq.real(), rs.real(), pq.imag(), rs.imag()};
}

ComplexRep matrix_to_rep(const LinearSymbol2& m) {
  const Complex pq(m.m11, m.m21);
  const Complex rs(m.m12, m.m22);
  const Complex i_rs = Complex(0.0, 1.0) * rs;
  return {kInvSqrt2 * (pq - i_rs), kInvSqrt2 * (pq + i_rs)};
}

ComplexRep rotate_rep(const ComplexRep& r, double theta) {
  return {std::polar(1.0, theta) * r.u, std::polar(1.0, 3.0 * theta) * r.w};
}

Invertibility is_invertible(const ComplexRep& r) {
  const double margin = std::norm(r.u) - std::norm(r.w);
  return {margin != 0.0, margin};
}

}  // namespace wavesym
