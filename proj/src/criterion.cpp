#include "rav/criterion.hpp"

#include <algorithm>

#include "rav/rng.hpp"

namespace rav {

QTensor::QTensor(int g_, int m_) : g(g_), m(m_) {
  check(g_ >= 1 && m_ >= 0, "ShapeMismatch", "tensor dimensions must be positive");
  q.assign(static_cast<std::size_t>(g_) * g_ * m_, QScalar());
}

const QScalar& QTensor::at(int i, int j, int c) const {
  check(i >= 0 && i < g && j >= 0 && j < g && c >= 0 && c < m, "ShapeMismatch",
        "tensor index out of range");
  return q[(static_cast<std::size_t>(i) * g + j) * m + c];
}

QScalar& QTensor::at(int i, int j, int c) {
  check(i >= 0 && i < g && j >= 0 && j < g && c >= 0 && c < m, "ShapeMismatch",
        "tensor index out of range");
  return q[(static_cast<std::size_t>(i) * g + j) * m + c];
}

bool QTensor::is_symmetric() const {
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      for (int c = 0; c < m; ++c)
        if (at(i, j, c) != at(j, i, c)) return false;
  return true;
}

QTensor siegel_q(int g) {
  check(g >= 1, "ShapeMismatch", "g must be positive");
  QTensor t(g, g * (g + 1) / 2);
  // coordinate index of the unordered pair {i, j}, i <= j, lexicographic
  auto pair_index = [g](int i, int j) { return i * g - i * (i - 1) / 2 + (j - i); };
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) t.at(i, j, pair_index(std::min(i, j), std::max(i, j))) = QScalar(1);
  return t;
}

ExactMatrix mu_pairs(const QTensor& q, const ExactMatrix& a, const ExactMatrix& b) {
  check(a.rows() == q.g && b.rows() == q.g, "ShapeMismatch", "factor rows must equal g");
  int ka = a.cols(), kb = b.cols();
  ExactMatrix mu(q.m, ka * kb);
  for (int ca = 0; ca < ka; ++ca)
    for (int cb = 0; cb < kb; ++cb)
      for (int i = 0; i < q.g; ++i) {
        if (a.at(i, ca).is_zero()) continue;
        for (int j = 0; j < q.g; ++j) {
          if (b.at(j, cb).is_zero()) continue;
          QScalar f = a.at(i, ca) * b.at(j, cb);
          for (int c = 0; c < q.m; ++c) {
            const QScalar& qe = q.at(i, j, c);
            if (!qe.is_zero()) mu.at(c, ca * kb + cb) += f * qe;
          }
        }
      }
  return mu;
}

Eigen::MatrixXcd mu_pairs(const QTensor& q, const Eigen::MatrixXcd& a,
                          const Eigen::MatrixXcd& b) {
  check(a.rows() == q.g && b.rows() == q.g, "ShapeMismatch", "factor rows must equal g");
  int ka = static_cast<int>(a.cols()), kb = static_cast<int>(b.cols());
  Eigen::MatrixXcd mu = Eigen::MatrixXcd::Zero(q.m, ka * kb);
  for (int ca = 0; ca < ka; ++ca)
    for (int cb = 0; cb < kb; ++cb)
      for (int i = 0; i < q.g; ++i)
        for (int j = 0; j < q.g; ++j) {
          std::complex<double> f = a(i, ca) * b(j, cb);
          for (int c = 0; c < q.m; ++c) {
            const QScalar& qe = q.at(i, j, c);
            if (!qe.is_zero()) mu(c, ca * kb + cb) += f * qe.to_double();
          }
        }
  return mu;
}

bool check_condition1(const QTensor& q, const ExactMatrix& w) {
  check(q.is_symmetric(), "ShapeMismatch", "tensor is not symmetric");
  int g = q.g, k = w.cols();
  check(w.rows() == g && k >= 1, "ShapeMismatch", "W must be g x k");
  check(w.rank() == k, "RankDeficient", "W basis must be independent");
  ExactMatrix mu = mu_pairs(q, w, ExactMatrix::identity(g));
  if (mu.rank() != k * g - k * (k - 1) / 2) return false;
  // remaining kernel vectors must be antisymmetric tensors over W
  ExactMatrix ker = mu.kernel();
  for (int c = 0; c < ker.cols(); ++c) {
    ExactMatrix kc(k, g);
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < g; ++j) kc.at(a, j) = ker.at(a * g + j, c);
    ExactMatrix mt = w * kc;
    if (mt != -mt.transpose()) return false;
  }
  return true;
}

namespace {

struct ComplexSvd {
  int rank = 0;
  Eigen::MatrixXcd null_basis;  // columns
};

ComplexSvd complex_rank_null(const Eigen::MatrixXcd& a, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sig = svd.singularValues();
  double top = sig.size() == 0 ? 0.0 : sig(0);
  double thresh = tol * std::max(1.0, top);
  ComplexSvd out;
  for (int i = 0; i < sig.size(); ++i)
    if (sig(i) > thresh) ++out.rank;
  out.null_basis = svd.matrixV().rightCols(a.cols() - out.rank);
  return out;
}

}  // namespace

bool check_condition1(const QTensor& q, const Eigen::MatrixXcd& w, double tol) {
  check(q.is_symmetric(), "ShapeMismatch", "tensor is not symmetric");
  int g = q.g, k = static_cast<int>(w.cols());
  check(w.rows() == g && k >= 1, "ShapeMismatch", "W must be g x k");
  check(complex_rank_null(w, tol).rank == k, "RankDeficient", "W basis must be independent");
  Eigen::MatrixXcd mu = mu_pairs(q, w, Eigen::MatrixXcd::Identity(g, g));
  ComplexSvd sv = complex_rank_null(mu, tol);
  if (sv.rank != k * g - k * (k - 1) / 2) return false;
  for (int c = 0; c < sv.null_basis.cols(); ++c) {
    Eigen::MatrixXcd kc(k, g);
    for (int a = 0; a < k; ++a)
      for (int j = 0; j < g; ++j) kc(a, j) = sv.null_basis(a * g + j, c);
    Eigen::MatrixXcd mt = w * kc;
    double scale = std::max(1.0, mt.cwiseAbs().maxCoeff());
    if ((mt + mt.transpose()).cwiseAbs().maxCoeff() > tol * scale) return false;
  }
  return true;
}

bool check_Ek(const QTensor& q, const ExactMatrix& w, const ExactMatrix& eh) {
  check(q.is_symmetric(), "ShapeMismatch", "tensor is not symmetric");
  int g = q.g, k = w.cols();
  check(w.rows() == g && k >= 1, "ShapeMismatch", "W must be g x k");
  check(eh.rows() == g && eh.cols() == g, "ShapeMismatch", "pairing must be g x g");
  check(w.rank() == k, "RankDeficient", "W basis must be independent");
  check(eh.rank() == g, "DegeneratePolarization", "pairing is singular");
  if (k == g) return true;  // W (x) W_perp is zero
  ExactMatrix wperp = (w.transpose() * eh).kernel();
  return mu_pairs(q, w, wperp).rank() == k * (g - k);
}

bool check_Ek(const QTensor& q, const Eigen::MatrixXcd& w, const Eigen::MatrixXcd& eh,
              double tol) {
  check(q.is_symmetric(), "ShapeMismatch", "tensor is not symmetric");
  int g = q.g, k = static_cast<int>(w.cols());
  check(w.rows() == g && k >= 1, "ShapeMismatch", "W must be g x k");
  check(eh.rows() == g && eh.cols() == g, "ShapeMismatch", "pairing must be g x g");
  check(complex_rank_null(w, tol).rank == k, "RankDeficient", "W basis must be independent");
  check(complex_rank_null(eh, tol).rank == g, "DegeneratePolarization", "pairing is singular");
  if (k == g) return true;
  Eigen::MatrixXcd wperp = complex_rank_null(w.adjoint() * eh, tol).null_basis;
  return complex_rank_null(mu_pairs(q, w, wperp), tol).rank == k * (g - k);
}

Poly3 Poly3::fermat(int d) {
  check(d >= 1, "DegreeTooSmall", "degree must be positive");
  Poly3 f;
  f.degree = d;
  f.coeff[{d, 0, 0}] = 1;
  f.coeff[{0, d, 0}] = 1;
  f.coeff[{0, 0, d}] = 1;
  return f;
}

Poly3 Poly3::partial(int var) const {
  check(var >= 0 && var < 3, "ShapeMismatch", "variable index out of range");
  Poly3 out;
  out.degree = degree - 1;
  for (const auto& [e, c] : coeff) {
    if (e[static_cast<std::size_t>(var)] == 0) continue;
    std::array<int, 3> f = e;
    int p = f[static_cast<std::size_t>(var)]--;
    out.coeff[f] += p * c;
  }
  return out;
}

Poly3 Poly3::times_monomial(const std::array<int, 3>& mono) const {
  Poly3 out;
  out.degree = degree + mono[0] + mono[1] + mono[2];
  for (const auto& [e, c] : coeff)
    out.coeff[{e[0] + mono[0], e[1] + mono[1], e[2] + mono[2]}] = c;
  return out;
}

std::vector<std::array<int, 3>> monomials_deg(int n) {
  std::vector<std::array<int, 3>> out;
  for (int a = n; a >= 0; --a)
    for (int b = n - a; b >= 0; --b) out.push_back({a, b, n - a - b});
  return out;
}

namespace {

std::map<std::array<int, 3>, int> index_of(const std::vector<std::array<int, 3>>& monos) {
  std::map<std::array<int, 3>, int> idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx[monos[i]] = static_cast<int>(i);
  return idx;
}

}  // namespace

QTensor plane_curve_q(const Poly3& f) {
  int d = f.degree;
  check(d >= 4, "DegreeTooSmall", "degree must be at least 4");
  check(!f.coeff.empty(), "ShapeMismatch", "zero polynomial");
  for (const auto& [e, c] : f.coeff)
    check(e[0] >= 0 && e[1] >= 0 && e[2] >= 0 && e[0] + e[1] + e[2] == d && sgn(c) != 0,
          "ShapeMismatch", "polynomial is not homogeneous of the stated degree");

  // Smoothness: the partials have no common projective zero iff they span
  // every form in degree 3d-5 (the Jacobian ring vanishes above 3(d-2)).
  {
    std::vector<std::array<int, 3>> big = monomials_deg(3 * d - 5);
    std::vector<std::array<int, 3>> mult = monomials_deg(2 * d - 4);
    auto big_idx = index_of(big);
    ExactMatrix span(static_cast<int>(big.size()), 3 * static_cast<int>(mult.size()));
    for (int v = 0; v < 3; ++v) {
      Poly3 pv = f.partial(v);
      for (std::size_t u = 0; u < mult.size(); ++u) {
        Poly3 prod = pv.times_monomial(mult[u]);
        int col = v * static_cast<int>(mult.size()) + static_cast<int>(u);
        for (const auto& [e, c] : prod.coeff) span.at(big_idx.at(e), col) = QScalar(c);
      }
    }
    check(span.rank() == static_cast<int>(big.size()), "SingularCurve",
          "the curve has a singular point");
  }

  std::vector<std::array<int, 3>> dom = monomials_deg(d - 3);
  std::vector<std::array<int, 3>> tgt = monomials_deg(2 * d - 6);
  auto tgt_idx = index_of(tgt);
  int nt = static_cast<int>(tgt.size());

  // the subspace F * (degree d-6) of the target, row-reduced
  std::vector<std::array<int, 3>> low = monomials_deg(d - 6);
  ExactMatrix sub(static_cast<int>(low.size()), nt);
  for (std::size_t u = 0; u < low.size(); ++u) {
    Poly3 fu = f.times_monomial(low[u]);
    for (const auto& [e, c] : fu.coeff) sub.at(static_cast<int>(u), tgt_idx.at(e)) = QScalar(c);
  }
  ExactMatrix::Rref rr = sub.rref();
  std::vector<bool> is_pivot(static_cast<std::size_t>(nt), false);
  for (int p : rr.pivot_cols) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < nt; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

  int gdim = static_cast<int>(dom.size());
  QTensor out(gdim, static_cast<int>(free_cols.size()));
  for (int i = 0; i < gdim; ++i)
    for (int j = i; j < gdim; ++j) {
      std::array<int, 3> w = {dom[static_cast<std::size_t>(i)][0] + dom[static_cast<std::size_t>(j)][0],
                              dom[static_cast<std::size_t>(i)][1] + dom[static_cast<std::size_t>(j)][1],
                              dom[static_cast<std::size_t>(i)][2] + dom[static_cast<std::size_t>(j)][2]};
      std::vector<QScalar> v(static_cast<std::size_t>(nt));
      v[static_cast<std::size_t>(tgt_idx.at(w))] = QScalar(1);
      // reduce by the fully reduced rows (disjoint pivots: one pass)
      for (int row = 0; row < rr.rank; ++row) {
        const QScalar& pivot_val = v[static_cast<std::size_t>(rr.pivot_cols[static_cast<std::size_t>(row)])];
        if (pivot_val.is_zero()) continue;
        QScalar c = pivot_val;
        for (int col = 0; col < nt; ++col)
          v[static_cast<std::size_t>(col)] -= c * rr.r.at(row, col);
      }
      for (std::size_t c = 0; c < free_cols.size(); ++c) {
        out.at(i, j, static_cast<int>(c)) = v[static_cast<std::size_t>(free_cols[c])];
        out.at(j, i, static_cast<int>(c)) = v[static_cast<std::size_t>(free_cols[c])];
      }
    }
  return out;
}

FermatReport fermat_criterion(int d, int k, unsigned long seed) {
  check(k == 1, "BadK", "only line directions are searched");
  QTensor q = plane_curve_q(Poly3::fermat(d));
  FermatReport rep;
  rep.d = d;
  rep.g = q.g;
  rep.m = q.m;
  rep.v = ExactMatrix(q.g, 1);
  rep.witness_rank = -1;
  ExactMatrix eye = ExactMatrix::identity(q.g);
  auto try_v = [&](const ExactMatrix& v) {
    int r = mu_pairs(q, v, eye).rank();
    if (r > rep.witness_rank) {
      rep.witness_rank = r;
      rep.v = v;
    }
    return r == q.g;
  };
  for (int i = 0; i < q.g; ++i) {
    ExactMatrix v(q.g, 1);
    v.at(i, 0) = QScalar(1);
    if (try_v(v)) {
      rep.passes = true;
      return rep;
    }
  }
  Rng rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    ExactMatrix v(q.g, 1);
    bool nonzero = false;
    for (int i = 0; i < q.g; ++i) {
      long e = rng.uniform_int(-9, 9);
      v.at(i, 0) = QScalar(e);
      nonzero = nonzero || e != 0;
    }
    if (!nonzero) continue;
    if (try_v(v)) {
      rep.passes = true;
      return rep;
    }
  }
  rep.passes = false;
  return rep;
}

}  // namespace rav
