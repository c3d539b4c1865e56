#pragma once

#include <vector>

#include "rav/exact_matrix.hpp"
#include "rav/f2.hpp"

namespace rav {

// One normal-form real structure on a principally polarized abelian variety
// of dimension g: the invariant pair (alpha, lambda), the symmetric integer
// matrix M representing it, and the lattice involution T = [[I, M],[0, -I]].
struct RealStructureType {
  int alpha = 0;
  int lambda = 0;
  int g = 0;
  ExactMatrix m;
  ExactMatrix t;
};

// Topological type (epsilon, k) of a real curve of genus g: epsilon = 1 for
// dividing curves (then k = g + 1 mod 2, 1 <= k <= g + 1), epsilon = 0
// otherwise (0 <= k <= g), k the number of real components.
struct CurveTopologicalType {
  int epsilon = 0;
  int k = 0;
  int g = 0;
};

// (alpha, lambda) admissible for dimension g: (0, 0), or 1 <= lambda <= g
// with alpha in {1, 2} and alpha = 1 forced when lambda is odd.
bool index_in_I(int alpha, int lambda, int g);

// Normal form: (0,0) -> 0; (1,lambda) -> I_lambda (+) 0; (2,lambda) ->
// hyperbolic blocks [[0,1],[1,0]] (+) 0. IndexNotInI outside the index set.
ExactMatrix standard_M(int alpha, int lambda, int g);

// T = [[I, M],[0, -I]]; satisfies T^2 = I and T^t E T = -E.
ExactMatrix involution_T(const ExactMatrix& m);

// Recovers (alpha, lambda) from M by F2 congruence classification of M mod 2.
F2Class classify_normal_form(const ExactMatrix& m);

// Complete duplicate-free listings: lambda ascending then alpha ascending,
// and epsilon then k.
std::vector<RealStructureType> enumerate_ab_types(int g);
std::vector<CurveTopologicalType> enumerate_curve_types(int g);

// True iff A M A^t = M for unimodular integer A (NotUnimodular otherwise).
bool gamma_i_member(const ExactMatrix& a, const ExactMatrix& m);

// diag(A, A^-t): the symplectic embedding of GL_g(Z); conjugates T_M into
// T_{A M A^t}.
ExactMatrix embed_gl(const ExactMatrix& a);

}  // namespace rav
