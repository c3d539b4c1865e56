#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "rav/qscalar.hpp"

namespace rav {

// Dense matrix over Q(sqrt(d)). All entries must live in one field: the
// QScalar operations themselves reject mixing, and field_d() exposes the
// single d in use. Row-major storage; all algorithms are exact Gauss-Jordan
// over the fraction field.
class ExactMatrix {
public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(int rows, int cols);
  ExactMatrix(std::initializer_list<std::initializer_list<long>> grid);

  static ExactMatrix identity(int n);
  static ExactMatrix zeros(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const QScalar& at(int i, int j) const;
  QScalar& at(int i, int j);
  const QScalar& operator()(int i, int j) const { return at(i, j); }
  QScalar& operator()(int i, int j) { return at(i, j); }

  // The single square-free d shared by all entries (1 for rational matrices);
  // FieldMismatch if two genuine fields appear.
  long field_d() const;

  bool is_symmetric() const;
  bool is_integer_matrix() const;
  bool is_rational_matrix() const;

  ExactMatrix transpose() const;
  ExactMatrix operator-() const;
  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y) { return x += y; }
  friend ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y) { return x -= y; }
  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y);
  friend ExactMatrix operator*(const QScalar& s, ExactMatrix m);

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y);
  friend bool operator!=(const ExactMatrix& x, const ExactMatrix& y) { return !(x == y); }

  ExactMatrix block(int i0, int j0, int r, int c) const;
  ExactMatrix col(int j) const { return block(0, j, rows_, 1); }
  static ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
  static ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);

  struct Rref;
  Rref rref() const;

  int rank() const;
  // Basis of the right null space as columns; cols() - rank() of them.
  ExactMatrix kernel() const;
  QScalar det() const;
  ExactMatrix inverse() const;  // SingularMatrix if not invertible

  // Monic characteristic polynomial coefficients c[0] + c[1] x + ... + x^n
  // (Faddeev-LeVerrier; exact).
  std::vector<QScalar> charpoly() const;

private:
  int rows_, cols_;
  std::vector<QScalar> e_;
};

struct ExactMatrix::Rref {
  ExactMatrix r;
  std::vector<int> pivot_cols;
  int rank = 0;
};

inline int ExactMatrix::rank() const { return rref().rank; }

// Solves A X = B for square invertible A; SingularMatrix otherwise.
ExactMatrix solve_square(const ExactMatrix& a, const ExactMatrix& b);

// Column spans equal, tested by ranks of the stacked matrix.
bool spans_equal(const ExactMatrix& a, const ExactMatrix& b);

// Rational roots of a rational-coefficient polynomial with multiplicities,
// ascending. Only root splitting is supported (no irreducible factorization);
// meant for desk-scale polynomials such as involution characteristic
// polynomials.
std::vector<std::pair<mpq_class, int>> rational_roots(const std::vector<mpq_class>& coeffs);

}  // namespace rav
