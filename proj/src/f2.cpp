#include "rav/f2.hpp"

namespace rav {

bool F2Matrix::symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

F2Matrix F2Matrix::identity(int n) {
  F2Matrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

F2Matrix f2_from_exact(const ExactMatrix& m) {
  check(m.rows() == m.cols(), "ShapeMismatch", "mod-2 reduction of non-square matrix");
  check(m.is_integer_matrix(), "NotIntegral", "mod-2 reduction needs integer entries");
  F2Matrix f(m.rows());
  for (int i = 0; i < f.n; ++i)
    for (int j = 0; j < f.n; ++j) {
      mpz_class v = m.at(i, j).a().get_num();
      f.at(i, j) = static_cast<std::uint8_t>(mpz_class(abs(v) % 2).get_si());
    }
  return f;
}

int f2_rank(F2Matrix m) {
  int n = m.n;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int i = rank; i < n; ++i) {
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(m.a[static_cast<std::size_t>(piv) * n + j],
                                          m.a[static_cast<std::size_t>(rank) * n + j]);
    for (int i = 0; i < n; ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      for (int j = 0; j < n; ++j) m.at(i, j) ^= m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

namespace {

// Congruence primitives: every row operation is mirrored on columns of m and
// applied as a row operation to p, keeping p * m0 * p^t = m.
void congr_swap(F2Matrix& m, F2Matrix& p, int i, int j) {
  if (i == j) return;
  int n = m.n;
  for (int l = 0; l < n; ++l) std::swap(m.at(i, l), m.at(j, l));
  for (int l = 0; l < n; ++l) std::swap(m.at(l, i), m.at(l, j));
  for (int l = 0; l < n; ++l) std::swap(p.at(i, l), p.at(j, l));
}

// row j += row i (and col j += col i).
void congr_add(F2Matrix& m, F2Matrix& p, int j, int i) {
  int n = m.n;
  for (int l = 0; l < n; ++l) m.at(j, l) ^= m.at(i, l);
  for (int l = 0; l < n; ++l) m.at(l, j) ^= m.at(l, i);
  for (int l = 0; l < n; ++l) p.at(j, l) ^= p.at(i, l);
}

}  // namespace

F2Congruence f2_congruence_reduce(const F2Matrix& m0) {
  check(m0.symmetric(), "NotSymmetric", "congruence reduction needs a symmetric form");
  F2Congruence out{m0, F2Matrix::identity(m0.n)};
  F2Matrix& m = out.reduced;
  F2Matrix& p = out.p;
  int n = m.n;
  int pos = 0;
  while (pos < n) {
    int diag = -1;
    for (int i = pos; i < n; ++i) {
      if (m.at(i, i) != 0) {
        diag = i;
        break;
      }
    }
    if (diag >= 0) {
      congr_swap(m, p, diag, pos);
      for (int j = pos + 1; j < n; ++j) {
        if (m.at(pos, j) != 0) congr_add(m, p, j, pos);
      }
      ++pos;
      continue;
    }
    // All remaining diagonal entries vanish: alternating block. Find the
    // lowest off-diagonal 1 and build a hyperbolic pair.
    int bi = -1, bj = -1;
    for (int i = pos; i < n && bi < 0; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (m.at(i, j) != 0) {
          bi = i;
          bj = j;
          break;
        }
      }
    if (bi < 0) break;  // zero block; done
    congr_swap(m, p, bi, pos);
    congr_swap(m, p, bj, pos + 1);
    for (int l = pos + 2; l < n; ++l) {
      std::uint8_t a = m.at(pos, l);
      std::uint8_t b = m.at(pos + 1, l);
      // w += b*u + a*v kills both pairings with the hyperbolic pair (u, v).
      if (b != 0) congr_add(m, p, l, pos);
      if (a != 0) congr_add(m, p, l, pos + 1);
    }
    pos += 2;
  }
  return out;
}

F2Class f2_classify(const F2Matrix& m) {
  F2Congruence c = f2_congruence_reduce(m);
  int lambda = 0;
  bool diag_one = false;
  int i = 0;
  while (i < c.reduced.n) {
    if (c.reduced.at(i, i) != 0) {
      diag_one = true;
      ++lambda;
      ++i;
    } else if (i + 1 < c.reduced.n && c.reduced.at(i, i + 1) != 0) {
      lambda += 2;
      i += 2;
    } else {
      break;
    }
  }
  F2Class out;
  out.lambda = lambda;
  if (lambda == 0) {
    out.alpha = 0;
  } else {
    out.alpha = diag_one ? 1 : 2;
  }
  return out;
}

}  // namespace rav
