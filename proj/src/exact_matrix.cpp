#include "rav/exact_matrix.hpp"

#include <algorithm>
#include <map>

namespace rav {

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  check(rows >= 0 && cols >= 0, "ShapeMismatch", "negative matrix dimension");
  e_.assign(static_cast<std::size_t>(rows) * cols, QScalar());
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> grid) {
  rows_ = static_cast<int>(grid.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(grid.begin()->size());
  e_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : grid) {
    check(static_cast<int>(row.size()) == cols_, "ShapeMismatch", "ragged initializer");
    for (long v : row) e_.emplace_back(v);
  }
}

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = QScalar(1);
  return m;
}

ExactMatrix ExactMatrix::zeros(int rows, int cols) { return ExactMatrix(rows, cols); }

const QScalar& ExactMatrix::at(int i, int j) const {
  check(i >= 0 && i < rows_ && j >= 0 && j < cols_, "ShapeMismatch", "index out of range");
  return e_[static_cast<std::size_t>(i) * cols_ + j];
}

QScalar& ExactMatrix::at(int i, int j) {
  check(i >= 0 && i < rows_ && j >= 0 && j < cols_, "ShapeMismatch", "index out of range");
  return e_[static_cast<std::size_t>(i) * cols_ + j];
}

long ExactMatrix::field_d() const {
  long d = 1;
  for (const QScalar& q : e_) d = combine_d(d, q.d());
  return d;
}

bool ExactMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool ExactMatrix::is_integer_matrix() const {
  return std::all_of(e_.begin(), e_.end(), [](const QScalar& q) { return q.is_integer(); });
}

bool ExactMatrix::is_rational_matrix() const {
  return std::all_of(e_.begin(), e_.end(), [](const QScalar& q) { return q.is_rational(); });
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix m = *this;
  for (QScalar& q : m.e_) q = -q;
  return m;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
  check(rows_ == o.rows_ && cols_ == o.cols_, "ShapeMismatch", "matrix addition shapes");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

ExactMatrix& ExactMatrix::operator-=(const ExactMatrix& o) {
  check(rows_ == o.rows_ && cols_ == o.cols_, "ShapeMismatch", "matrix subtraction shapes");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
  check(x.cols_ == y.rows_, "ShapeMismatch", "matrix product shapes");
  ExactMatrix p(x.rows_, y.cols_);
  for (int i = 0; i < x.rows_; ++i)
    for (int l = 0; l < x.cols_; ++l) {
      const QScalar& xv = x.at(i, l);
      if (xv.is_zero()) continue;
      for (int j = 0; j < y.cols_; ++j) p.at(i, j) += xv * y.at(l, j);
    }
  return p;
}

ExactMatrix operator*(const QScalar& s, ExactMatrix m) {
  for (QScalar& q : m.e_) q = s * q;
  return m;
}

bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
  return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
}

ExactMatrix ExactMatrix::block(int i0, int j0, int r, int c) const {
  check(i0 >= 0 && j0 >= 0 && r >= 0 && c >= 0 && i0 + r <= rows_ && j0 + c <= cols_,
        "ShapeMismatch", "block out of range");
  ExactMatrix b(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
  return b;
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& a, const ExactMatrix& b) {
  check(a.rows_ == b.rows_, "ShapeMismatch", "hstack row counts");
  ExactMatrix m(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
  }
  return m;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& a, const ExactMatrix& b) {
  check(a.cols_ == b.cols_, "ShapeMismatch", "vstack column counts");
  ExactMatrix m(a.rows_ + b.rows_, a.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
  return m;
}

ExactMatrix::Rref ExactMatrix::rref() const {
  Rref out;
  out.r = *this;
  ExactMatrix& r = out.r;
  int cur = 0;
  for (int col = 0; col < cols_ && cur < rows_; ++col) {
    int piv = -1;
    for (int i = cur; i < rows_; ++i) {
      if (!r.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != cur) {
      for (int j = 0; j < cols_; ++j) std::swap(r.at(piv, j), r.at(cur, j));
    }
    QScalar inv = QScalar(1) / r.at(cur, col);
    for (int j = col; j < cols_; ++j) r.at(cur, j) = inv * r.at(cur, j);
    for (int i = 0; i < rows_; ++i) {
      if (i == cur || r.at(i, col).is_zero()) continue;
      QScalar f = r.at(i, col);
      for (int j = col; j < cols_; ++j) r.at(i, j) -= f * r.at(cur, j);
    }
    out.pivot_cols.push_back(col);
    ++cur;
  }
  out.rank = static_cast<int>(out.pivot_cols.size());
  return out;
}

ExactMatrix ExactMatrix::kernel() const {
  Rref rr = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (int c : rr.pivot_cols) is_pivot[c] = true;
  ExactMatrix k(cols_, cols_ - rr.rank);
  int out_col = 0;
  for (int j = 0; j < cols_; ++j) {
    if (is_pivot[j]) continue;
    k.at(j, out_col) = QScalar(1);
    for (int p = 0; p < rr.rank; ++p) k.at(rr.pivot_cols[p], out_col) = -rr.r.at(p, j);
    ++out_col;
  }
  return k;
}

QScalar ExactMatrix::det() const {
  check(rows_ == cols_, "ShapeMismatch", "determinant of non-square matrix");
  ExactMatrix r = *this;
  QScalar d(1);
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i) {
      if (!r.at(i, col).is_zero()) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return QScalar(0);
    if (piv != col) {
      for (int j = 0; j < cols_; ++j) std::swap(r.at(piv, j), r.at(col, j));
      d = -d;
    }
    d = d * r.at(col, col);
    QScalar inv = QScalar(1) / r.at(col, col);
    for (int i = col + 1; i < rows_; ++i) {
      if (r.at(i, col).is_zero()) continue;
      QScalar f = inv * r.at(i, col);
      for (int j = col; j < cols_; ++j) r.at(i, j) -= f * r.at(col, j);
    }
  }
  return d;
}

ExactMatrix ExactMatrix::inverse() const {
  check(rows_ == cols_, "ShapeMismatch", "inverse of non-square matrix");
  return solve_square(*this, identity(rows_));
}

std::vector<QScalar> ExactMatrix::charpoly() const {
  check(rows_ == cols_, "ShapeMismatch", "charpoly of non-square matrix");
  int n = rows_;
  std::vector<QScalar> c(static_cast<std::size_t>(n) + 1);
  c[n] = QScalar(1);
  ExactMatrix m = ExactMatrix::zeros(n, n);
  for (int k = 1; k <= n; ++k) {
    ExactMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted.at(i, i) += c[n - k + 1];
    m = (*this) * shifted;
    QScalar tr(0);
    for (int i = 0; i < n; ++i) tr += m.at(i, i);
    c[n - k] = QScalar(mpq_class(-1, 1) / k) * tr;
  }
  return c;
}

ExactMatrix solve_square(const ExactMatrix& a, const ExactMatrix& b) {
  check(a.rows() == a.cols(), "ShapeMismatch", "solve needs a square system");
  check(a.rows() == b.rows(), "ShapeMismatch", "solve right-hand-side rows");
  ExactMatrix aug = ExactMatrix::hstack(a, b);
  ExactMatrix::Rref rr = aug.rref();
  for (int i = 0; i < a.cols(); ++i) {
    check(i < rr.rank && rr.pivot_cols[i] == i, "SingularMatrix", "matrix is singular");
  }
  return rr.r.block(0, a.cols(), a.rows(), b.cols());
}

bool spans_equal(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) return false;
  int ra = a.rank();
  int rb = b.rank();
  if (ra != rb) return false;
  return ExactMatrix::hstack(a, b).rank() == ra;
}

namespace {

// All positive divisors of |v| by trial division; desk-scale inputs only.
std::vector<mpz_class> divisors(const mpz_class& v) {
  mpz_class n = abs(v);
  std::vector<mpz_class> out;
  mpz_class p = 1;
  for (; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      if (p * p != n) out.push_back(n / p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

mpq_class eval_poly(const std::vector<mpq_class>& c, const mpq_class& x) {
  mpq_class v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

// Divides by (x - r); remainder must vanish.
std::vector<mpq_class> deflate(const std::vector<mpq_class>& c, const mpq_class& r) {
  std::vector<mpq_class> q(c.size() - 1);
  mpq_class carry = 0;
  for (std::size_t i = c.size(); i-- > 1;) {
    carry = c[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

}  // namespace

std::vector<std::pair<mpq_class, int>> rational_roots(const std::vector<mpq_class>& coeffs) {
  std::vector<mpq_class> c = coeffs;
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  check(!c.empty(), "ShapeMismatch", "zero polynomial has no well-defined roots");
  std::map<mpq_class, int> found;
  // Split off x^m first.
  std::size_t low = 0;
  while (low < c.size() && sgn(c[low]) == 0) ++low;
  if (low > 0) {
    found[mpq_class(0)] = static_cast<int>(low);
    c.erase(c.begin(), c.begin() + static_cast<long>(low));
  }
  if (c.size() > 1) {
    mpz_class den_lcm = 1;
    for (const mpq_class& q : c) {
      mpz_class d = q.get_den();
      den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    mpz_class a0 = mpz_class(c.front() * den_lcm);
    mpz_class an = mpz_class(c.back() * den_lcm);
    for (const mpz_class& p : divisors(a0)) {
      for (const mpz_class& q : divisors(an)) {
        for (int s = -1; s <= 1; s += 2) {
          mpq_class cand(s * p, q);
          cand.canonicalize();
          if (found.count(cand) != 0) continue;
          if (sgn(eval_poly(c, cand)) != 0) continue;
          int mult = 0;
          std::vector<mpq_class> rest = c;
          while (rest.size() > 1 && sgn(eval_poly(rest, cand)) == 0) {
            rest = deflate(rest, cand);
            ++mult;
          }
          found[cand] = mult;
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace rav
