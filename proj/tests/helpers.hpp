#pragma once

#include <string>

#include "rav/errors.hpp"
#include "rav/exact_matrix.hpp"
#include "rav/rng.hpp"

// Runs f, expecting a DomainError; returns its machine code, or a marker when
// nothing / something else was thrown.
template <class F>
std::string thrown_code(F&& f) {
  try {
    f();
  } catch (const rav::DomainError& e) {
    return e.code();
  } catch (...) {
    return "<wrong exception type>";
  }
  return "<nothing thrown>";
}

#define CHECK_CODE(code_, ...) CHECK(thrown_code([&] { __VA_ARGS__; }) == code_)

namespace test_util {

// Random integer matrix with entries in [-bound, bound].
inline rav::ExactMatrix random_int_matrix(rav::Rng& rng, int rows, int cols, long bound) {
  rav::ExactMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rav::QScalar(rng.uniform_int(-bound, bound));
  return m;
}

// Random unimodular integer matrix: product of elementary shears.
inline rav::ExactMatrix random_unimodular(rav::Rng& rng, int n, int shears) {
  rav::ExactMatrix u = rav::ExactMatrix::identity(n);
  for (int s = 0; s < shears; ++s) {
    int i = static_cast<int>(rng.uniform_int(0, n - 1));
    int j = static_cast<int>(rng.uniform_int(0, n - 1));
    if (i == j) continue;
    rav::ExactMatrix e = rav::ExactMatrix::identity(n);
    e.at(i, j) = rav::QScalar(rng.uniform_int(-2, 2));
    u = u * e;
  }
  return u;
}

// Random symmetric integer matrix.
inline rav::ExactMatrix random_symmetric(rav::Rng& rng, int n, long bound) {
  rav::ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      m.at(i, j) = rav::QScalar(rng.uniform_int(-bound, bound));
      m.at(j, i) = m.at(i, j);
    }
  return m;
}

// Random full-rank g x k integer matrix (retries until independent).
inline rav::ExactMatrix random_full_rank(rav::Rng& rng, int rows, int cols, long bound) {
  for (;;) {
    rav::ExactMatrix w = random_int_matrix(rng, rows, cols, bound);
    if (w.rank() == cols) return w;
  }
}

}  // namespace test_util
