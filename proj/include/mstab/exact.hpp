// Exact and ball-valued complex numbers used for central charges.
//
// Algebraic parts live in Q(i)(sqrt d) with d in {1, 2, 3}: enough to rotate
// Gaussian rationals by any multiple of pi/6 or pi/4. The modulus factor
// exp(pi Im lambda) of a rotation is kept as a symbolic exp(pi y) with
// rational y. Anything else falls back to a midpoint-radius ball.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "mstab/error.hpp"

namespace mstab {

using Q = mpq_class;

Q parse_rational(const std::string& s);
std::string to_string(const Q& q);

// a + b*sqrt(d), exact.
struct Surd {
  Q a, b;
  int d = 1;
  int sign() const;
  long double approx() const;
};

// A complex number of the form sum_y c_y exp(pi y) with rational y and c_y in
// Q(i)(sqrt d), or a midpoint-radius ball. exp(pi) is transcendental, so the
// terms are linearly independent over the algebraic numbers: zero tests are
// exact, and so is every sign decision whose terms agree in sign. The y = 0
// term alone is the plain algebraic case.
class CNum {
 public:
  CNum() = default;
  CNum(long v);  // NOLINT: integer literals are common in tests
  CNum(const Q& re, const Q& im);
  static CNum gaussian(const Q& re, const Q& im) { return CNum(re, im); }
  static CNum surd(int d, const Q& re_a, const Q& re_b, const Q& im_a, const Q& im_b);
  static CNum ball(long double re, long double im, long double rad);
  static CNum i() { return CNum(Q(0), Q(1)); }
  static CNum exp_pi(const Q& y);  // exp(pi * y), a positive real

  bool exact() const;  // algebraic: not a ball and no exp terms
  bool is_ball() const { return is_ball_; }
  bool gaussian_rational() const;  // exact with no sqrt part
  int root() const { return d_; }

  // Only valid for exact() values.
  Surd re() const;
  Surd im() const;
  // Only valid for gaussian_rational() values.
  Q re_q() const;
  Q im_q() const;

  std::complex<long double> approx() const;
  long double radius() const;  // error bound of approx()

  // Exact unless the terms disagree in sign (then decided numerically) or
  // this is a ball; an undecidable case throws PrecisionError.
  int sign_re() const;
  int sign_im() const;
  bool is_zero() const;  // exact for non-balls; balls throw unless clearly nonzero

  CNum operator-() const;
  CNum conj() const;
  CNum& operator+=(const CNum& o);
  CNum& operator-=(const CNum& o);
  CNum& operator*=(const CNum& o);
  friend CNum operator+(CNum a, const CNum& b) { return a += b; }
  friend CNum operator-(CNum a, const CNum& b) { return a -= b; }
  friend CNum operator*(CNum a, const CNum& b) { return a *= b; }
  CNum inverse() const;
  friend CNum operator/(const CNum& a, const CNum& b) { return a * b.inverse(); }

  // Structural equality of non-ball values; any ball operand makes this
  // false since overlap is not equality.
  bool operator==(const CNum& o) const;
  bool operator!=(const CNum& o) const { return !(*this == o); }

  CNum to_ball() const;
  std::string str() const;

  // |z|^2 as an exact surd (exact values only).
  Surd norm2() const;

 private:
  struct Part {
    Q ra, rb, ia, ib;  // (ra + rb sqrt d) + i (ia + ib sqrt d)
    bool zero() const { return ra == 0 && rb == 0 && ia == 0 && ib == 0; }
    bool operator==(const Part& o) const {
      return ra == o.ra && rb == o.rb && ia == o.ia && ib == o.ib;
    }
  };
  void normalize();
  static bool combine_roots(CNum& a, CNum& b);
  int term_sign(bool imaginary) const;

  bool is_ball_ = false;
  int d_ = 1;
  std::map<Q, Part> terms_;  // exponent y -> coefficient; no zero coefficients
  long double bre_ = 0, bim_ = 0, rad_ = 0;
};

// The semi-closed upper half-plane: Im > 0, or Im = 0 and Re < 0.
bool in_upper(const CNum& z);

// Orders phases of two nonzero values lying in a common half-open half-plane
// (both in the closed upper one, or both in its complement). Returns -1, 0, 1.
int compare_phase(const CNum& a, const CNum& b);

// Phase in (0,1] for z in the semi-closed upper half-plane, as a float and,
// for the directions reachable by exact rotations, as an exact rational.
struct Phase {
  long double value = 0;
  std::optional<Q> exact;
};
Phase phase_of(const CNum& z);

// exp(-pi*i*lambda). When Re lambda has reduced denominator in {1,2,3,4,6}
// the result is exact, with an exp(pi Im lambda) factor when Im lambda != 0;
// otherwise a ball.
CNum rotation(const Q& re, const Q& im = Q(0));
CNum rotation_numeric(long double re, long double im);
bool rotation_is_exact(const Q& re, const Q& im);

// Complex number lambda = re + i*im with rational parts.
struct QComplex {
  Q re, im;
  QComplex operator+(const QComplex& o) const { return {re + o.re, im + o.im}; }
  bool operator==(const QComplex& o) const { return re == o.re && im == o.im; }
};
QComplex parse_qcomplex(const std::string& s);

}  // namespace mstab
