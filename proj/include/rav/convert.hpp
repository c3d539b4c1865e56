#pragma once

#include <Eigen/Dense>

#include "rav/exact_matrix.hpp"

namespace rav {

inline Eigen::MatrixXd to_float(const ExactMatrix& m) {
  Eigen::MatrixXd f(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) f(i, j) = m.at(i, j).to_double();
  return f;
}

inline ExactMatrix exact_from_longs(int rows, int cols, const std::vector<long>& v) {
  ExactMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = QScalar(v[static_cast<std::size_t>(i) * cols + j]);
  return m;
}

inline double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace rav
