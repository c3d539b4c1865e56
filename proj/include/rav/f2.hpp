#pragma once

#include <cstdint>
#include <vector>

#include "rav/exact_matrix.hpp"

namespace rav {

// Square matrix over F2.
struct F2Matrix {
  int n = 0;
  std::vector<std::uint8_t> a;

  F2Matrix() = default;
  explicit F2Matrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0) {}

  std::uint8_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  std::uint8_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  bool symmetric() const;
  static F2Matrix identity(int n);

  friend bool operator==(const F2Matrix& x, const F2Matrix& y) = default;
};

// Reduction of an integer matrix mod 2. Rejects non-integer entries.
F2Matrix f2_from_exact(const ExactMatrix& m);

int f2_rank(F2Matrix m);

// P F2-invertible with p * m * p^t equal to the returned block-diagonal
// representative (diagonal ones and hyperbolic [[0,1],[1,0]] blocks, then
// zeros). Symmetric congruence elimination, lowest-index pivot first.
struct F2Congruence {
  F2Matrix reduced;
  F2Matrix p;
};
F2Congruence f2_congruence_reduce(const F2Matrix& m);

// Classification invariants of a symmetric bilinear form over F2:
// lambda = rank; alpha = 0 when lambda = 0, 1 when non-alternating,
// 2 when alternating of positive rank. alpha = 1 forced for odd lambda.
struct F2Class {
  int alpha = 0;
  int lambda = 0;
  friend bool operator==(const F2Class& x, const F2Class& y) = default;
};
F2Class f2_classify(const F2Matrix& m);

}  // namespace rav
