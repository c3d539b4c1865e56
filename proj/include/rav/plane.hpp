#pragma once

#include "rav/exact_matrix.hpp"

namespace rav {

// An r-dimensional Q-subspace of Q^n held in canonical form: the basis matrix
// is the reduced column echelon representative of the column space, scaled
// column-wise to primitive integer vectors with positive pivots. Two planes
// are equal as subspaces iff their basis matrices are identical, so subspace
// equality is plain matrix equality.
class RationalPlane {
public:
  RationalPlane() = default;

  // Canonicalizes the span of the given columns. Entries must be rational
  // (NotRational); columns must be independent (RankDeficient).
  static RationalPlane from_columns(const ExactMatrix& b);

  int n() const { return basis_.rows(); }
  int r() const { return basis_.cols(); }
  const ExactMatrix& basis() const { return basis_; }

  bool contains(const ExactMatrix& v) const;

  friend bool operator==(const RationalPlane& x, const RationalPlane& y) {
    return x.basis_ == y.basis_;
  }
  friend bool operator!=(const RationalPlane& x, const RationalPlane& y) { return !(x == y); }
  // Deterministic total order (dimension, then entry-wise); used to sort
  // search output.
  friend bool operator<(const RationalPlane& x, const RationalPlane& y);

private:
  ExactMatrix basis_;
};

}  // namespace rav
