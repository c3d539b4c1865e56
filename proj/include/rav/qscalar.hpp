#pragma once

#include <gmpxx.h>

#include <string>

#include "rav/errors.hpp"

namespace rav {

bool is_squarefree(long d);

// Canonical rational from a possibly non-reduced fraction.
mpq_class make_rational(long num, long den);

// Parses "p/q" or "p" (canonicalized). Throws ParseError on garbage.
mpq_class parse_rational(const std::string& s);

// Element a + b*sqrt(d) of Q or of the real quadratic field Q(sqrt(d)).
// Normal form: b == 0 forces d == 1 (plain rationals always carry d = 1), and
// d == 1 folds b into a. d is square-free and >= 1. Arithmetic between
// elements of distinct genuine fields (both d > 1, different) is a checked
// error; plain rationals combine with anything.
class QScalar {
public:
  QScalar() : a_(0), b_(0), d_(1) {}
  QScalar(long n) : a_(n), b_(0), d_(1) {}  // NOLINT: implicit by design
  QScalar(const mpq_class& a) : a_(a), b_(0), d_(1) {}
  QScalar(mpq_class a, mpq_class b, long d);

  static QScalar sqrt_of(long d) { return QScalar(0, 1, d); }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  long d() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_integer() const;

  // Exact sign of a + b*sqrt(d): -1, 0, or 1.
  int sign() const;

  QScalar conj() const { return QScalar(a_, -b_, d_); }
  // Field norm a^2 - d*b^2; nonzero for nonzero elements (d square-free).
  mpq_class field_norm() const { return a_ * a_ - d_ * b_ * b_; }

  QScalar operator-() const { return QScalar(-a_, -b_, d_); }
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);

  friend QScalar operator+(QScalar x, const QScalar& y) { return x += y; }
  friend QScalar operator-(QScalar x, const QScalar& y) { return x -= y; }
  friend QScalar operator*(QScalar x, const QScalar& y) { return x *= y; }
  friend QScalar operator/(QScalar x, const QScalar& y) { return x /= y; }

  friend bool operator==(const QScalar& x, const QScalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QScalar& x, const QScalar& y) { return !(x == y); }

  double to_double() const;
  std::string str() const;

private:
  mpq_class a_, b_;
  long d_;

  void normalize();
};

// Shared field index for two operands; FieldMismatch if both are genuine and
// distinct.
long combine_d(long d1, long d2);

}  // namespace rav
