#include "rav/qscalar.hpp"

#include <cctype>
#include <cmath>

namespace rav {

bool is_squarefree(long d) {
  if (d < 1) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

mpq_class make_rational(long num, long den) {
  check(den != 0, "DivisionByZero", "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class parse_rational(const std::string& s) {
  check(!s.empty(), "ParseError", "empty rational literal");
  std::size_t slash = 0;
  bool seen_slash = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      check(!seen_slash && i > 0 && i + 1 < s.size(), "ParseError",
            "malformed rational '" + s + "'");
      seen_slash = true;
      slash = i;
    } else if (c == '-') {
      check(i == 0 || (seen_slash && i == slash + 1), "ParseError",
            "malformed rational '" + s + "'");
    } else {
      check(std::isdigit(static_cast<unsigned char>(c)) != 0, "ParseError",
            "malformed rational '" + s + "'");
    }
  }
  mpq_class q;
  check(q.set_str(s, 10) == 0, "ParseError", "malformed rational '" + s + "'");
  check(sgn(q.get_den()) != 0, "DivisionByZero", "rational '" + s + "' has zero denominator");
  q.canonicalize();
  return q;
}

QScalar::QScalar(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  check(is_squarefree(d_), "NonSquarefreeD",
        "field index " + std::to_string(d_) + " is not square-free and positive");
  normalize();
}

void QScalar::normalize() {
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (sgn(b_) == 0) d_ = 1;
}

bool QScalar::is_integer() const {
  return is_rational() && a_.get_den() == 1;
}

int QScalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 against d*b^2; the larger magnitude wins.
  mpq_class diff = a_ * a_ - d_ * b_ * b_;
  int sd = sgn(diff);
  return sd == 0 ? 0 : (sd > 0 ? sa : sb);
}

long combine_d(long d1, long d2) {
  if (d1 == d2) return d1;
  if (d1 == 1) return d2;
  if (d2 == 1) return d1;
  fail("FieldMismatch", "cannot mix Q(sqrt(" + std::to_string(d1) + ")) with Q(sqrt(" +
                            std::to_string(d2) + "))");
}

QScalar& QScalar::operator+=(const QScalar& o) {
  d_ = combine_d(d_, o.d_);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) {
  d_ = combine_d(d_, o.d_);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QScalar& QScalar::operator*=(const QScalar& o) {
  long d = combine_d(d_, o.d_);
  mpq_class na = a_ * o.a_ + mpq_class(d) * b_ * o.b_;
  mpq_class nb = a_ * o.b_ + b_ * o.a_;
  a_ = na;
  b_ = nb;
  d_ = d;
  normalize();
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
  check(!o.is_zero(), "DivisionByZero", "division by zero scalar");
  long d = combine_d(d_, o.d_);
  // x / (a + b sqrt d) = x * (a - b sqrt d) / (a^2 - d b^2).
  mpq_class n = o.field_norm();
  mpq_class na = (a_ * o.a_ - mpq_class(d) * b_ * o.b_) / n;
  mpq_class nb = (b_ * o.a_ - a_ * o.b_) / n;
  a_ = na;
  b_ = nb;
  d_ = d;
  normalize();
  return *this;
}

double QScalar::to_double() const {
  double v = a_.get_d();
  if (sgn(b_) != 0) v += b_.get_d() * std::sqrt(static_cast<double>(d_));
  return v;
}

std::string QScalar::str() const {
  if (is_rational()) return a_.get_str();
  return a_.get_str() + "+" + b_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
}

}  // namespace rav
