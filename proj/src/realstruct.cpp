#include "rav/realstruct.hpp"

namespace rav {

bool index_in_I(int alpha, int lambda, int g) {
  if (alpha == 0 && lambda == 0) return true;
  if (lambda < 1 || lambda > g) return false;
  if (alpha != 1 && alpha != 2) return false;
  return lambda % 2 == 0 || alpha == 1;
}

ExactMatrix standard_M(int alpha, int lambda, int g) {
  check(g >= 1, "IndexNotInI", "g must be positive");
  check(index_in_I(alpha, lambda, g), "IndexNotInI", "(alpha, lambda) outside the index set");
  ExactMatrix m(g, g);
  if (alpha == 1) {
    for (int i = 0; i < lambda; ++i) m.at(i, i) = QScalar(1);
  } else if (alpha == 2) {
    for (int i = 0; i + 1 < lambda; i += 2) {
      m.at(i, i + 1) = QScalar(1);
      m.at(i + 1, i) = QScalar(1);
    }
  }
  return m;
}

ExactMatrix involution_T(const ExactMatrix& m) {
  int g = m.rows();
  check(g >= 1 && m.cols() == g, "ShapeMismatch", "M must be square");
  check(m.is_symmetric(), "NotSymmetric", "M must be symmetric");
  check(m.is_integer_matrix(), "NotIntegral", "M must be integral");
  ExactMatrix t(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    t.at(i, i) = QScalar(1);
    t.at(g + i, g + i) = QScalar(-1);
    for (int j = 0; j < g; ++j) t.at(i, g + j) = m.at(i, j);
  }
  return t;
}

F2Class classify_normal_form(const ExactMatrix& m) {
  check(m.rows() == m.cols(), "ShapeMismatch", "M must be square");
  check(m.is_symmetric(), "NotSymmetric", "M must be symmetric");
  return f2_classify(f2_from_exact(m));
}

std::vector<RealStructureType> enumerate_ab_types(int g) {
  check(g >= 1, "ShapeMismatch", "g must be positive");
  std::vector<RealStructureType> out;
  auto add = [&](int alpha, int lambda) {
    RealStructureType t;
    t.alpha = alpha;
    t.lambda = lambda;
    t.g = g;
    t.m = standard_M(alpha, lambda, g);
    t.t = involution_T(t.m);
    out.push_back(std::move(t));
  };
  add(0, 0);
  for (int lambda = 1; lambda <= g; ++lambda) {
    add(1, lambda);
    if (lambda % 2 == 0) add(2, lambda);
  }
  return out;
}

std::vector<CurveTopologicalType> enumerate_curve_types(int g) {
  check(g >= 1, "ShapeMismatch", "g must be positive");
  std::vector<CurveTopologicalType> out;
  for (int k = 0; k <= g; ++k) out.push_back({0, k, g});
  for (int k = 1; k <= g + 1; ++k)
    if ((g + 1 - k) % 2 == 0) out.push_back({1, k, g});
  return out;
}

namespace {

void check_unimodular(const ExactMatrix& a) {
  check(a.rows() == a.cols() && a.rows() >= 1, "ShapeMismatch", "A must be square");
  check(a.is_integer_matrix(), "NotUnimodular", "A must be integral");
  QScalar det = a.det();
  check(det == QScalar(1) || det == QScalar(-1), "NotUnimodular",
        "A must have determinant +1 or -1");
}

}  // namespace

bool gamma_i_member(const ExactMatrix& a, const ExactMatrix& m) {
  check(m.rows() == m.cols(), "ShapeMismatch", "M must be square");
  check(m.is_symmetric(), "NotSymmetric", "M must be symmetric");
  check_unimodular(a);
  check(a.rows() == m.rows(), "ShapeMismatch", "A and M sizes differ");
  return a * m * a.transpose() == m;
}

ExactMatrix embed_gl(const ExactMatrix& a) {
  check_unimodular(a);
  int g = a.rows();
  ExactMatrix inv_t = a.inverse().transpose();
  ExactMatrix out(2 * g, 2 * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      out.at(i, j) = a.at(i, j);
      out.at(g + i, g + j) = inv_t.at(i, j);
    }
  return out;
}

}  // namespace rav
